//! Deterministic incremental Schreier–Sims with explicit transversals.
//!
//! Level `j` stores the basic orbit of base point `b_j` under the pointwise
//! stabilizer `G^(j)` of `b_0..b_{j-1}`, together with a transversal element
//! `u` (and its inverse) for every orbit point, `b_j^u = point`. The first
//! orbit point is always the base point itself with the identity transversal.

use crate::perm::Permutation;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct Level {
    pub point: u32,
    pub orbit: Vec<u32>,
    /// point -> index into `orbit`, or `u32::MAX`.
    pub position: Vec<u32>,
    pub transversal: Vec<Permutation>,
    pub inverse_transversal: Vec<Permutation>,
    /// Strong generators fixing `b_0..b_{j-1}` (indices into `Bsgs::strong`).
    gens: Vec<usize>,
    /// For each orbit point, how many of `gens` have had their Schreier
    /// generator sifted.
    tested: Vec<usize>,
}

impl Level {
    fn new(point: u32, degree: usize) -> Self {
        let mut position = vec![NONE; degree];
        position[point as usize] = 0;
        Level {
            point,
            orbit: vec![point],
            position,
            transversal: vec![Permutation::identity(degree)],
            inverse_transversal: vec![Permutation::identity(degree)],
            gens: Vec::new(),
            tested: vec![0],
        }
    }

    #[inline]
    pub fn index_of(&self, point: u32) -> Option<usize> {
        match self.position[point as usize] {
            NONE => None,
            k => Some(k as usize),
        }
    }

    pub fn len(&self) -> usize {
        self.orbit.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbit.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct Bsgs {
    degree: usize,
    pub levels: Vec<Level>,
    pub strong: Vec<Permutation>,
}

impl Bsgs {
    pub fn new(degree: usize, generators: &[Permutation]) -> Self {
        let mut b = Bsgs {
            degree,
            levels: Vec::new(),
            strong: Vec::new(),
        };
        for g in generators {
            b.insert(g);
        }
        b
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// Sifts `g` from level `start`; returns the residue and the level where
    /// sifting stopped (`levels.len()` when all levels were passed).
    pub fn strip_from(&self, g: &Permutation, start: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for j in start..self.levels.len() {
            let level = &self.levels[j];
            let img = h.apply(level.point);
            match level.index_of(img) {
                None => return (h, j),
                Some(k) => {
                    if k != 0 {
                        h = h.mul(&level.inverse_transversal[k]);
                    }
                }
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, j) = self.strip_from(g, 0);
        j == self.levels.len() && h.is_identity()
    }

    /// Adds `g` to the group and restores completeness of the BSGS.
    pub fn insert(&mut self, g: &Permutation) {
        let (h, j) = self.strip_from(g, 0);
        if j == self.levels.len() && h.is_identity() {
            return;
        }
        self.add_strong(h, j);
        self.close_from(j);
    }

    fn add_strong(&mut self, h: Permutation, depth: usize) {
        let mut depth = depth;
        if depth == self.levels.len() {
            let pt = h
                .first_moved_point()
                .expect("non-identity residue moves a point");
            self.levels.push(Level::new(pt, self.degree));
            depth = self.levels.len() - 1;
        }
        let idx = self.strong.len();
        self.strong.push(h);
        for l in 0..=depth {
            self.levels[l].gens.push(idx);
            self.extend_orbit(l);
        }
    }

    fn extend_orbit(&mut self, l: usize) {
        let strong = &self.strong;
        let level = &mut self.levels[l];
        // Orbit points are closed under all previous generators; re-scan from
        // the start is cheap relative to sifting and keeps this simple.
        let mut k = 0;
        while k < level.orbit.len() {
            let pt = level.orbit[k];
            for &gi in &level.gens {
                let s = &strong[gi];
                let img = s.apply(pt);
                if level.position[img as usize] == NONE {
                    let u = level.transversal[k].mul(s);
                    level.position[img as usize] = level.orbit.len() as u32;
                    level.orbit.push(img);
                    level.inverse_transversal.push(u.inverse());
                    level.transversal.push(u);
                    level.tested.push(0);
                }
            }
            k += 1;
        }
    }

    fn close_from(&mut self, start: usize) {
        let mut i = start as isize;
        'outer: while i >= 0 {
            let l = i as usize;
            let mut k = 0;
            while k < self.levels[l].orbit.len() {
                while self.levels[l].tested[k] < self.levels[l].gens.len() {
                    let gpos = self.levels[l].tested[k];
                    self.levels[l].tested[k] += 1;
                    let level = &self.levels[l];
                    let s = &self.strong[level.gens[gpos]];
                    let img = s.apply(level.orbit[k]);
                    let kk = level.position[img as usize] as usize;
                    let schreier = level.transversal[k]
                        .mul(s)
                        .mul(&level.inverse_transversal[kk]);
                    let (h, j) = self.strip_from(&schreier, l + 1);
                    if j < self.levels.len() || !h.is_identity() {
                        self.add_strong(h, j);
                        i = j.min(self.levels.len() - 1) as isize;
                        continue 'outer;
                    }
                }
                k += 1;
            }
            i -= 1;
        }
    }
}
