//! Fixtures shared by the benchmarks in `benches/`.

use grouplen_core::harness::{bundled_corpus, GroupSpec};
use grouplen_core::PermutationGroup;

/// A group from the bundled corpus.
pub fn corpus_group(name: &str) -> PermutationGroup {
    corpus_spec(name).group().expect("bundled group loads")
}

pub fn corpus_spec(name: &str) -> GroupSpec {
    bundled_corpus()
        .into_iter()
        .find(|s| s.name == name)
        .unwrap_or_else(|| panic!("no bundled group {name}"))
}
