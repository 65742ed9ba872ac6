//! Brute-force oracles. They work on explicit element lists and share no code
//! with the library beyond the permutation type.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use grouplen_core::{Permutation, PermutationGroup};

/// A subgroup as a sorted list of element indices.
pub type Set = Vec<u32>;

pub struct Brute {
    pub elems: Vec<Permutation>,
    n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    order: Vec<u64>,
}

impl Brute {
    /// Enumerates the group by breadth-first search from the generators.
    pub fn new(g: &PermutationGroup) -> Self {
        let id = Permutation::identity(g.degree());
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Permutation, u32> = HashMap::from([(id, 0)]);
        let mut k = 0;
        while k < elems.len() {
            for s in g.generators() {
                let y = elems[k].mul(s);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elems.len() as u32);
                    elems.push(y);
                }
            }
            k += 1;
        }
        let n = elems.len();
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = index[&elems[a].mul(&elems[b])];
            }
        }
        let inv = (0..n)
            .map(|a| (0..n).find(|&b| mul[a * n + b] == 0).unwrap() as u32)
            .collect();
        let order = (0..n)
            .map(|a| {
                let (mut x, mut k) = (a as u32, 1u64);
                while x != 0 {
                    x = mul[x as usize * n + a];
                    k += 1;
                }
                k
            })
            .collect();
        Brute { elems, n, mul, inv, order }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn m(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.n + b as usize]
    }

    pub fn whole(&self) -> Set {
        (0..self.n as u32).collect()
    }

    pub fn trivial(&self) -> Set {
        vec![0]
    }

    pub fn element_order(&self, a: u32) -> u64 {
        self.order[a as usize]
    }

    /// Subgroup generated by `seed`.
    pub fn closure(&self, seed: &[u32]) -> Set {
        let mut inside = vec![false; self.n];
        inside[0] = true;
        let mut list = vec![0u32];
        let mut k = 0;
        while k < list.len() {
            for &s in seed {
                let y = self.m(list[k], s);
                if !inside[y as usize] {
                    inside[y as usize] = true;
                    list.push(y);
                }
            }
            k += 1;
        }
        list.sort_unstable();
        list
    }

    pub fn classes(&self) -> Vec<Set> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for x in 0..self.n as u32 {
            if seen[x as usize] {
                continue;
            }
            let mut c: Set = (0..self.n as u32)
                .map(|g| self.m(self.m(self.inv[g as usize], x), g))
                .collect();
            c.sort_unstable();
            c.dedup();
            for &y in &c {
                seen[y as usize] = true;
            }
            out.push(c);
        }
        out
    }

    /// Every normal subgroup, built by adding one conjugacy class at a time.
    pub fn normal_subgroups(&self) -> Vec<Set> {
        let classes = self.classes();
        let mut found = vec![self.trivial()];
        let mut seen: HashSet<Set> = found.iter().cloned().collect();
        let mut k = 0;
        while k < found.len() {
            let base = found[k].clone();
            for c in &classes {
                if subset(c, &base) {
                    continue;
                }
                let mut seed = base.clone();
                seed.extend(c);
                let j = self.closure(&seed);
                if seen.insert(j.clone()) {
                    found.push(j);
                }
            }
            k += 1;
        }
        found.sort_by_key(|s| s.len());
        found
    }

    pub fn commutator(&self, a: &Set, b: &Set) -> Set {
        let mut seed = Vec::new();
        for &x in a {
            for &y in b {
                let c = self.m(self.m(self.inv[x as usize], self.inv[y as usize]), self.m(x, y));
                seed.push(c);
            }
        }
        seed.sort_unstable();
        seed.dedup();
        self.closure(&seed)
    }

    /// Whether `top/bottom` is nilpotent (both normal, `bottom ⊆ top`).
    pub fn nilpotent_section(&self, top: &Set, bottom: &Set) -> bool {
        let mut l = top.clone();
        loop {
            let mut seed = self.commutator(&l, top);
            seed.extend(bottom);
            let next = self.closure(&seed);
            if next == l {
                return l == *bottom;
            }
            l = next;
        }
    }

    /// Elements of `s` whose order only involves primes accepted by `pi`.
    pub fn pi_elements(&self, s: &Set, pi: impl Fn(u64) -> bool) -> Set {
        s.iter().copied().filter(|&x| primes(self.element_order(x)).into_iter().all(&pi)).collect()
    }

    /// Normal Hall π-subgroup test: the π-elements form a subgroup of
    /// order the π-part of `|s|`.
    pub fn has_normal_hall(&self, s: &Set, pi: impl Fn(u64) -> bool + Copy) -> bool {
        let e = self.pi_elements(s, pi);
        let part: u64 = primes(s.len() as u64)
            .into_iter()
            .filter(|&p| pi(p))
            .map(|p| p_part(s.len() as u64, p))
            .product();
        if e.len() as u64 != part {
            return false;
        }
        let inside: HashSet<u32> = e.iter().copied().collect();
        e.iter().all(|&a| e.iter().all(|&b| inside.contains(&self.m(a, b))))
    }

    pub fn is_nilpotent(&self, s: &Set) -> bool {
        primes(s.len() as u64).into_iter().all(|p| self.has_normal_hall(s, |q| q == p))
    }

    /// `class_of` maps a prime to its σ-class label.
    pub fn is_sigma_nilpotent(&self, s: &Set, class_of: impl Fn(u64) -> u64) -> bool {
        let labels: HashSet<u64> = primes(s.len() as u64).into_iter().map(&class_of).collect();
        labels.into_iter().all(|c| self.has_normal_hall(s, |q| class_of(q) == c))
    }

    /// Whether there is a chain of members of `normals` from `bottom` to
    /// `top` whose successive indices all satisfy `ok`.
    pub fn normal_chain(&self, normals: &[Set], bottom: &Set, top: &Set, ok: impl Fn(u64) -> bool) -> bool {
        let between: Vec<&Set> = normals.iter().filter(|m| subset(bottom, m) && subset(m, top)).collect();
        let mut reach: HashSet<&Set> = HashSet::new();
        for m in &between {
            if m.len() == bottom.len() {
                reach.insert(m);
                continue;
            }
            if between
                .iter()
                .any(|k| k.len() < m.len() && subset(k, m) && reach.contains(k) && ok((m.len() / k.len()) as u64))
            {
                reach.insert(m);
            }
        }
        reach.contains(top)
    }

    /// Fitting height by climbing through largest nilpotent sections;
    /// `None` if some step has no unique largest member.
    pub fn fitting_height(&self) -> Option<usize> {
        let normals = self.normal_subgroups();
        let mut cur = self.trivial();
        let mut h = 0;
        while cur.len() < self.n {
            let next = largest_member(&normals, |m| subset(&cur, m) && self.nilpotent_section(m, &cur))?;
            if next.len() == cur.len() {
                return None;
            }
            cur = next.clone();
            h += 1;
        }
        Some(h)
    }

    /// Every subgroup, grown one element at a time from the trivial one.
    pub fn all_subgroups(&self) -> Vec<Set> {
        let mut found: Vec<(Set, Vec<u32>)> = vec![(self.trivial(), Vec::new())];
        let mut seen: HashSet<Set> = HashSet::from([self.trivial()]);
        let mut k = 0;
        while k < found.len() {
            let (h, gens) = found[k].clone();
            let inside: HashSet<u32> = h.iter().copied().collect();
            for x in 0..self.n as u32 {
                if inside.contains(&x) {
                    continue;
                }
                let mut g = gens.clone();
                g.push(x);
                let j = self.closure(&g);
                if seen.insert(j.clone()) {
                    found.push((j, g));
                }
            }
            k += 1;
        }
        found.into_iter().map(|(h, _)| h).collect()
    }

    pub fn maximal_subgroups(&self) -> Vec<Set> {
        let all = self.all_subgroups();
        let proper: Vec<&Set> = all.iter().filter(|h| h.len() < self.n).collect();
        proper
            .iter()
            .filter(|h| !proper.iter().any(|k| k.len() > h.len() && subset(h, k)))
            .map(|h| (*h).clone())
            .collect()
    }

    /// Whether every element induces an inner automorphism on every
    /// factor of a chief series.
    pub fn is_quasinilpotent(&self) -> bool {
        let normals = self.normal_subgroups();
        let mut cur = self.trivial();
        while cur.len() < self.n {
            let next = normals
                .iter()
                .filter(|m| m.len() > cur.len() && subset(&cur, m))
                .min_by_key(|m| m.len())
                .unwrap()
                .clone();
            let mut below = vec![false; self.n];
            for &x in &cur {
                below[x as usize] = true;
            }
            let inner = |x: u32| {
                next.iter().any(|&a| {
                    next.iter().all(|&y| {
                        let by_x = self.m(self.m(self.inv[x as usize], y), x);
                        let by_a = self.m(self.m(self.inv[a as usize], y), a);
                        below[self.m(self.inv[by_a as usize], by_x) as usize]
                    })
                })
            };
            if !(0..self.n as u32).all(inner) {
                return false;
            }
            cur = next;
        }
        true
    }

    /// The subgroup `s` as a standalone group.
    pub fn subgroup(&self, s: &Set) -> Brute {
        let degree = self.elems[0].degree();
        let gens = s.iter().map(|&x| self.elems[x as usize].clone()).collect();
        Brute::new(&PermutationGroup::new(degree, gens).unwrap())
    }

    pub fn to_set(&self, g: &PermutationGroup) -> Set {
        (0..self.n as u32).filter(|&x| g.contains(&self.elems[x as usize])).collect()
    }
}

pub fn subset(a: &[u32], b: &[u32]) -> bool {
    let hb: HashSet<u32> = b.iter().copied().collect();
    a.iter().all(|x| hb.contains(x))
}

pub fn primes(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut part = 1;
    while n.is_multiple_of(p) {
        n /= p;
        part *= p;
    }
    part
}

pub fn is_prime_power(n: u64) -> bool {
    primes(n).len() == 1
}

/// Largest member of `normals` in a class, checked to contain every member.
pub fn largest_member(normals: &[Set], member: impl Fn(&Set) -> bool) -> Option<&Set> {
    let members: Vec<&Set> = normals.iter().filter(|n| member(n)).collect();
    let top = *members.iter().max_by_key(|n| n.len())?;
    members.iter().all(|n| subset(n, top)).then_some(top)
}

// ----- linear algebra over F_q -----

/// Rank by plain Gaussian elimination.
pub fn rank(rows: &[Vec<u32>], q: u32) -> usize {
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| x as u64).collect()).collect();
    let q = q as u64;
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let inv = (1..q).find(|&k| k * m[r][c] % q == 1).unwrap();
        for x in m[r].iter_mut() {
            *x = *x * inv % q;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] + q * q - f * m[r][j] % q) % q;
                }
            }
        }
        r += 1;
    }
    r
}

/// Row vector times matrix.
pub fn apply(v: &[u32], a: &[Vec<u32>], q: u32) -> Vec<u32> {
    (0..a[0].len())
        .map(|j| (v.iter().zip(a).map(|(&x, row)| x as u64 * row[j] as u64).sum::<u64>() % q as u64) as u32)
        .collect()
}

/// Dimension of the submodule spanned by the orbit of `v`.
pub fn spin_dimension(v: &[u32], gens: &[Vec<Vec<u32>>], q: u32) -> usize {
    let mut basis = vec![v.to_vec()];
    let mut k = 0;
    while k < basis.len() {
        for g in gens {
            let w = apply(&basis[k], g, q);
            let mut cand = basis.clone();
            cand.push(w.clone());
            if rank(&cand, q) > basis.len() {
                basis.push(w);
            }
        }
        k += 1;
    }
    basis.len()
}

/// Whether some nonzero vector (normalized to leading coefficient 1)
/// spans a proper submodule.
pub fn brute_reducible(gens: &[Vec<Vec<u32>>], q: u32, d: usize) -> bool {
    let total = (q as u64).pow(d as u32);
    for code in 1..total {
        let mut v = Vec::with_capacity(d);
        let mut c = code;
        for _ in 0..d {
            v.push((c % q as u64) as u32);
            c /= q as u64;
        }
        if v.iter().find(|&&x| x != 0) != Some(&1) {
            continue;
        }
        if spin_dimension(&v, gens, q) < d {
            return true;
        }
    }
    false
}
