//! The group-file format.
//!
//! ```text
//! # comment
//! group S3
//! degree 3
//! gen (1,2)
//! gen (1,2,3)
//! tag soluble
//! end
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::perm::{parse_cycles, Permutation};

/// The corpus shipped with the library.
pub const BUNDLED_CORPUS: &str = include_str!("../../data/corpus.grp");

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupSpec {
    pub name: String,
    pub degree: usize,
    /// Generators in 1-based cycle notation.
    pub generators: Vec<String>,
    pub tags: Vec<String>,
}

impl GroupSpec {
    pub fn new(name: &str, degree: usize, generators: &[&str]) -> Self {
        GroupSpec {
            name: name.to_string(),
            degree,
            generators: generators.iter().map(|s| s.to_string()).collect(),
            tags: Vec::new(),
        }
    }

    /// The order recorded by an `order:<n>` tag.
    pub fn expected_order(&self) -> Option<u128> {
        self.tags.iter().find_map(|t| t.strip_prefix("order:")?.parse().ok())
    }

    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.iter().any(|t| t == tag)
    }

    /// Builds the group, checking the recorded order if there is one.
    pub fn group(&self) -> Result<PermutationGroup> {
        let gens = self
            .generators
            .iter()
            .map(|g| Permutation::parse(g, self.degree))
            .collect::<Result<Vec<_>>>()?;
        let g = PermutationGroup::new(self.degree, gens)?;
        if let Some(expected) = self.expected_order() {
            if g.order() != expected {
                return Err(Error::Verification(format!(
                    "group {} has order {}, recorded {}",
                    self.name,
                    g.order(),
                    expected
                )));
            }
        }
        Ok(g)
    }

    pub fn from_group(name: &str, g: &PermutationGroup) -> Self {
        GroupSpec {
            name: name.to_string(),
            degree: g.degree(),
            generators: g.generator_strings(),
            tags: vec![format!("order:{}", g.order())],
        }
    }
}

fn parse_error(line: usize, column: usize, message: impl Into<String>, expected: &str) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
        expected: expected.to_string(),
    }
}

struct Open {
    spec: GroupSpec,
    line: usize,
    degree_seen: bool,
}

const IN_BLOCK: &str = "'degree', 'gen', 'tag' or 'end'";

/// Parses a group file. Errors carry 1-based line and column numbers.
pub fn parse_corpus(text: &str) -> Result<Vec<GroupSpec>> {
    let mut out: Vec<GroupSpec> = Vec::new();
    let mut names: HashSet<String> = HashSet::new();
    let mut open: Option<Open> = None;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let content = raw.split('#').next().unwrap_or("");
        let indent = content.len() - content.trim_start().len();
        let body = content.trim();
        if body.is_empty() {
            continue;
        }
        let (keyword, rest) = match body.find(char::is_whitespace) {
            Some(k) => (&body[..k], body[k..].trim_start()),
            None => (body, ""),
        };
        let rest_col = indent + body.len() - rest.len() + 1;
        let kw_col = indent + 1;
        match (&mut open, keyword) {
            (None, "group") => {
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(parse_error(line_no, rest_col, "group name must be one word", "a name"));
                }
                if !names.insert(rest.to_string()) {
                    return Err(parse_error(line_no, rest_col, format!("duplicate group name '{rest}'"), "a new name"));
                }
                open = Some(Open {
                    spec: GroupSpec::new(rest, 0, &[]),
                    line: line_no,
                    degree_seen: false,
                });
            }
            (None, _) => {
                return Err(parse_error(line_no, kw_col, format!("unexpected '{keyword}'"), "'group'"));
            }
            (Some(_), "group") => {
                return Err(parse_error(line_no, kw_col, "'group' inside an open block", "'end'"));
            }
            (Some(o), "degree") => {
                if o.degree_seen {
                    return Err(parse_error(line_no, kw_col, "degree given twice", IN_BLOCK));
                }
                o.spec.degree = match rest.parse::<usize>() {
                    Ok(n) if n >= 1 => n,
                    _ => return Err(parse_error(line_no, rest_col, format!("bad degree '{rest}'"), "a positive integer")),
                };
                o.degree_seen = true;
            }
            (Some(o), "gen") => {
                if !o.degree_seen {
                    return Err(parse_error(line_no, kw_col, "generator before degree", "'degree'"));
                }
                let cycles = parse_cycles(rest).map_err(|(col, msg)| parse_error(line_no, rest_col + col, msg, "cycle notation"))?;
                if let Some(&pt) = cycles.iter().flatten().max() {
                    if pt as usize >= o.spec.degree {
                        return Err(parse_error(
                            line_no,
                            rest_col,
                            format!("generator degree mismatch: point {} exceeds degree {}", pt + 1, o.spec.degree),
                            "points in 1..=degree",
                        ));
                    }
                }
                o.spec.generators.push(rest.to_string());
            }
            (Some(o), "tag") => {
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(parse_error(line_no, rest_col, "tag must be one word", "a word"));
                }
                o.spec.tags.push(rest.to_string());
            }
            (Some(o), "end") => {
                if !rest.is_empty() {
                    return Err(parse_error(line_no, rest_col, "text after 'end'", "end of line"));
                }
                if !o.degree_seen {
                    return Err(parse_error(line_no, kw_col, format!("group '{}' has no degree", o.spec.name), "'degree'"));
                }
                out.push(open.take().expect("open block").spec);
            }
            (Some(_), _) => {
                return Err(parse_error(line_no, kw_col, format!("unexpected '{keyword}'"), IN_BLOCK));
            }
        }
    }
    if let Some(o) = open {
        return Err(parse_error(
            last_line.max(o.line),
            1,
            format!("group '{}' is not closed", o.spec.name),
            "'end'",
        ));
    }
    Ok(out)
}

/// Writes specs back in the group-file format.
pub fn render_corpus(specs: &[GroupSpec]) -> String {
    let mut s = String::new();
    for spec in specs {
        let _ = writeln!(s, "group {}", spec.name);
        let _ = writeln!(s, "degree {}", spec.degree);
        for g in &spec.generators {
            let _ = writeln!(s, "gen {g}");
        }
        for t in &spec.tags {
            let _ = writeln!(s, "tag {t}");
        }
        s.push_str("end\n\n");
    }
    s
}

pub fn bundled_corpus() -> Vec<GroupSpec> {
    parse_corpus(BUNDLED_CORPUS).expect("bundled corpus parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_group() {
        let specs = parse_corpus("group S3\ndegree 3\ngen (1,2)\ngen (1,2,3)\nend").unwrap();
        assert_eq!(specs.len(), 1);
        assert_eq!(specs[0].group().unwrap().order(), 6);
    }

    #[test]
    fn positioned_errors() {
        match parse_corpus("group X\ndegree 3\ngen (1,2,2)\nend") {
            Err(Error::Parse { line, column, message, .. }) => {
                assert_eq!(line, 3);
                assert!(message.contains("repeated point in cycle"));
                assert!(column >= 5);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_corpus("group X\ndegree 2\ngen (1,3)\nend"),
            Err(Error::Parse { line: 3, .. })
        ));
        let dup = "group X\ndegree 2\nend\ngroup X\ndegree 2\nend";
        match parse_corpus(dup) {
            Err(Error::Parse { line: 4, column: 7, message, .. }) => assert!(message.contains("duplicate")),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_corpus("group X\ndegree 2\n"), Err(Error::Parse { expected, .. }) if expected == "'end'"));
        assert!(matches!(parse_corpus("degree 2"), Err(Error::Parse { line: 1, column: 1, .. })));
    }

    #[test]
    fn comments_and_round_trip() {
        let text = "# header\ngroup C2 # trailing\n  degree 2\ngen (1,2)\ntag abelian\nend\n";
        let specs = parse_corpus(text).unwrap();
        assert_eq!(specs[0].tags, vec!["abelian"]);
        assert_eq!(parse_corpus(&render_corpus(&specs)).unwrap(), specs);
    }

    #[test]
    fn bundled_orders() {
        let specs = bundled_corpus();
        assert!(specs.len() >= 40);
        for s in &specs {
            let g = s.group().unwrap();
            assert!(g.order() <= 720);
            assert_eq!(Some(g.order()), s.expected_order());
        }
    }
}
