//! Enumerated groups: every element of a permutation group gets an integer
//! index derived from its BSGS factorization, and subgroups become bitsets
//! over those indices.
//!
//! An element `x = u_{m-1} ... u_1 u_0` (transversal elements of levels
//! `m-1` down to `0`) has index `sum_j k_j * radix_j`, where `k_j` is the
//! orbit position of `u_j`. Index 0 is the identity. Products are computed
//! from base images alone, so no element is ever materialized as a full
//! permutation unless asked for.

use std::sync::Mutex;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::bsgs::Bsgs;
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::group::{clamp, PermutationGroup};
use crate::perm::Permutation;

/// Element index within a [`Universe`].
pub type Elem = u32;

/// Products are tabulated for groups up to this order.
const TABLE_LIMIT: usize = 1024;

#[derive(Clone, PartialEq, Eq)]
pub struct ElemSet {
    words: Vec<u64>,
    len: usize,
}

impl Hash for ElemSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.words.hash(state);
    }
}

impl ElemSet {
    pub fn new(len: usize) -> Self {
        ElemSet {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.words[(x >> 6) as usize] >> (x & 63) & 1 == 1
    }

    /// Returns true if `x` was newly inserted.
    #[inline]
    pub fn insert(&mut self, x: Elem) -> bool {
        let w = &mut self.words[(x >> 6) as usize];
        let bit = 1u64 << (x & 63);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        ElemSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
            len: self.len,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros();
                    w &= w - 1;
                    Some((wi as u32) * 64 + t)
                }
            })
        })
    }

    /// Order by the sorted element lists, smallest first differing element wins.
    pub fn canonical_cmp(&self, other: &ElemSet) -> Ordering {
        for (a, b) in self.words.iter().zip(&other.words) {
            if a != b {
                let diff = a ^ b;
                let low = diff & diff.wrapping_neg();
                return if a & low != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        Ordering::Equal
    }
}

/// A subgroup of a universe: its element set plus a generating list.
#[derive(Clone)]
pub struct Sub {
    pub set: Arc<ElemSet>,
    pub gens: Vec<Elem>,
    pub order: usize,
}

impl PartialEq for Sub {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.set == other.set
    }
}
impl Eq for Sub {}

impl std::fmt::Debug for Sub {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Sub(order {}, gens {:?})", self.order, self.gens)
    }
}

impl Sub {
    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.set.contains(x)
    }

    pub fn is_subgroup_of(&self, other: &Sub) -> bool {
        self.order <= other.order && self.set.is_subset(&other.set)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.set.iter()
    }

    /// (order, canonical element list) ordering used for deterministic choices.
    pub fn canonical_cmp(&self, other: &Sub) -> Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.set.canonical_cmp(&other.set))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    pub rep: Elem,
    pub size: usize,
}

#[derive(Default)]
struct Caches {
    ids: HashMap<ElemSet, usize>,
    classes: HashMap<usize, Arc<Vec<ClassInfo>>>,
    closures: HashMap<(usize, Elem), Sub>,
}

pub struct Universe {
    group: PermutationGroup,
    bsgs: Arc<Bsgs>,
    n: usize,
    m: usize,
    base: Vec<u32>,
    radix: Vec<u32>,
    base_images: Vec<u32>,
    inverse: Vec<Elem>,
    table: Option<Vec<Elem>>,
    gens: Vec<Elem>,
    caches: Mutex<Caches>,
}

impl Universe {
    pub fn new(group: &PermutationGroup, limits: &Limits) -> Result<Self> {
        let order = group.order();
        limits.check("element cap", limits.element_cap, clamp(order))?;
        if order > u32::MAX as u128 {
            return Err(Error::CapExceeded {
                cap: "element cap",
                limit: u32::MAX as usize,
                value: clamp(order),
            });
        }
        let bsgs = Arc::clone(group.bsgs());
        let n = order as usize;
        let m = bsgs.levels.len();
        let base = bsgs.base();
        let mut radix = Vec::with_capacity(m);
        let mut r = 1u32;
        for l in &bsgs.levels {
            radix.push(r);
            r = r.wrapping_mul(l.orbit.len() as u32);
        }
        let mut u = Universe {
            group: group.clone(),
            bsgs,
            n,
            m,
            base,
            radix,
            base_images: vec![0; n * m],
            inverse: vec![0; n],
            table: None,
            gens: Vec::new(),
            caches: Mutex::new(Caches::default()),
        };
        for x in 0..n {
            for j in 0..m {
                u.base_images[x * m + j] = u.apply(x as Elem, u.base[j]);
            }
        }
        let mut buf = vec![0u32; m];
        for x in 0..n {
            let digits = u.digits(x as Elem);
            for j in 0..m {
                let mut pt = u.base[j];
                for (l, &k) in digits.iter().enumerate() {
                    pt = u.bsgs.levels[l].inverse_transversal[k as usize].apply(pt);
                }
                buf[j] = pt;
            }
            u.inverse[x] = u.index_from_base_images(&buf);
        }
        if n <= TABLE_LIMIT {
            let mut table = vec![0; n * n];
            for x in 0..n {
                for y in 0..n {
                    table[x * n + y] = u.mul_slow(x as Elem, y as Elem);
                }
            }
            u.table = Some(table);
        }
        u.gens = group
            .generators()
            .iter()
            .map(|g| u.index_of(g).expect("generator lies in its own group"))
            .collect();
        Ok(u)
    }

    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    fn digits(&self, x: Elem) -> Vec<u32> {
        let mut rest = x;
        let mut out = Vec::with_capacity(self.m);
        for l in &self.bsgs.levels {
            let len = l.orbit.len() as u32;
            out.push(rest % len);
            rest /= len;
        }
        out
    }

    /// Image of `point` under element `x`.
    #[inline]
    pub fn apply(&self, x: Elem, point: u32) -> u32 {
        let mut pt = point;
        let mut rest = x;
        let mut ks = [0u32; 32];
        if self.m <= 32 {
            for (j, l) in self.bsgs.levels.iter().enumerate() {
                let len = l.orbit.len() as u32;
                ks[j] = rest % len;
                rest /= len;
            }
            for j in (0..self.m).rev() {
                pt = self.bsgs.levels[j].transversal[ks[j] as usize].apply(pt);
            }
            pt
        } else {
            let ds = self.digits(x);
            for j in (0..self.m).rev() {
                pt = self.bsgs.levels[j].transversal[ds[j] as usize].apply(pt);
            }
            pt
        }
    }

    fn index_from_base_images(&self, imgs: &[u32]) -> Elem {
        let mut ks = Vec::with_capacity(self.m);
        let mut idx = 0u32;
        for j in 0..self.m {
            let mut pt = imgs[j];
            for (l, &k) in ks.iter().enumerate() {
                pt = self.bsgs.levels[l].inverse_transversal[k as usize].apply(pt);
            }
            let k = self.bsgs.levels[j]
                .index_of(pt)
                .expect("base image lies in basic orbit") as u32;
            idx += k * self.radix[j];
            ks.push(k);
        }
        idx
    }

    fn mul_slow(&self, x: Elem, y: Elem) -> Elem {
        let mut imgs = [0u32; 32];
        if self.m <= 32 {
            for j in 0..self.m {
                imgs[j] = self.apply(y, self.base_images[x as usize * self.m + j]);
            }
            self.index_from_base_images(&imgs[..self.m])
        } else {
            let v: Vec<u32> = (0..self.m)
                .map(|j| self.apply(y, self.base_images[x as usize * self.m + j]))
                .collect();
            self.index_from_base_images(&v)
        }
    }

    /// `x` then `y`.
    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        match &self.table {
            Some(t) => t[x as usize * self.n + y as usize],
            None => self.mul_slow(x, y),
        }
    }

    #[inline]
    pub fn inv(&self, x: Elem) -> Elem {
        self.inverse[x as usize]
    }

    /// `s^-1 x s`.
    #[inline]
    pub fn conj(&self, x: Elem, s: Elem) -> Elem {
        self.mul(self.mul(self.inv(s), x), s)
    }

    /// `x^-1 y^-1 x y`.
    #[inline]
    pub fn comm(&self, x: Elem, y: Elem) -> Elem {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn pow(&self, x: Elem, mut e: u64) -> Elem {
        let mut acc = 0;
        let mut b = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: Elem) -> u64 {
        self.order_mod(x, None)
    }

    /// Smallest `e >= 1` with `x^e` in `bottom` (or the identity).
    pub fn order_mod(&self, x: Elem, bottom: Option<&Sub>) -> u64 {
        let mut e = 1u64;
        let mut y = x;
        loop {
            let inside = match bottom {
                Some(b) => b.contains(y),
                None => y == 0,
            };
            if inside {
                return e;
            }
            y = self.mul(y, x);
            e += 1;
        }
    }

    pub fn permutation(&self, x: Elem) -> Permutation {
        let images = (0..self.degree() as u32).map(|i| self.apply(x, i)).collect();
        Permutation::from_images_unchecked(images)
    }

    pub fn index_of(&self, p: &Permutation) -> Option<Elem> {
        if p.degree() != self.degree() {
            return None;
        }
        let mut ks: Vec<u32> = Vec::with_capacity(self.m);
        let mut idx = 0;
        for j in 0..self.m {
            let mut pt = p.apply(self.base[j]);
            for (l, &k) in ks.iter().enumerate() {
                pt = self.bsgs.levels[l].inverse_transversal[k as usize].apply(pt);
            }
            let k = self.bsgs.levels[j].index_of(pt)? as u32;
            idx += k * self.radix[j];
            ks.push(k);
        }
        if self.permutation(idx) == *p {
            Some(idx)
        } else {
            None
        }
    }

    // ----- subgroups -----

    pub fn trivial(&self) -> Sub {
        let mut set = ElemSet::new(self.n);
        set.insert(0);
        Sub {
            set: Arc::new(set),
            gens: Vec::new(),
            order: 1,
        }
    }

    pub fn whole(&self) -> Sub {
        let mut set = ElemSet::new(self.n);
        for x in 0..self.n as u32 {
            set.insert(x);
        }
        Sub {
            set: Arc::new(set),
            gens: self.gens.clone(),
            order: self.n,
        }
    }

    pub fn closure(&self, gens: &[Elem]) -> Sub {
        self.extend(&self.trivial(), gens)
    }

    /// ⟨base, extra⟩ by Dimino's coset method.
    pub fn extend(&self, base: &Sub, extra: &[Elem]) -> Sub {
        let mut set: ElemSet = (*base.set).clone();
        let mut elems: Vec<Elem> = base.set.iter().collect();
        let mut gens = base.gens.clone();
        let mut changed = false;
        for &g in extra {
            if set.contains(g) {
                continue;
            }
            changed = true;
            gens.push(g);
            let h: Vec<Elem> = elems.clone();
            let mut reps: Vec<Elem> = vec![0];
            let add_coset = |t: Elem, set: &mut ElemSet, elems: &mut Vec<Elem>| {
                for &x in &h {
                    let y = self.mul(x, t);
                    if set.insert(y) {
                        elems.push(y);
                    }
                }
            };
            add_coset(g, &mut set, &mut elems);
            reps.push(g);
            let mut k = 0;
            while k < reps.len() {
                let r = reps[k];
                for &s in &gens {
                    let t = self.mul(r, s);
                    if !set.contains(t) {
                        add_coset(t, &mut set, &mut elems);
                        reps.push(t);
                    }
                }
                k += 1;
            }
        }
        if !changed {
            return base.clone();
        }
        let order = elems.len();
        Sub {
            set: Arc::new(set),
            gens,
            order,
        }
    }

    pub fn join(&self, a: &Sub, b: &Sub) -> Sub {
        if b.is_subgroup_of(a) {
            return a.clone();
        }
        if a.is_subgroup_of(b) {
            return b.clone();
        }
        self.extend(a, &b.gens)
    }

    /// Smallest subgroup containing `start` and `extra` that is normalized
    /// by the generators of `top`. `start` must itself be normalized by `top`.
    pub fn normal_closure_from(&self, top: &Sub, start: &Sub, extra: &[Elem]) -> Sub {
        self.normal_closure_until(top, start, extra, |_| false)
            .expect("closure without stop condition completes")
    }

    /// As [`Universe::normal_closure_from`], but gives up (returning `None`)
    /// as soon as an intermediate subgroup satisfies `stop`.
    pub fn normal_closure_until(
        &self,
        top: &Sub,
        start: &Sub,
        extra: &[Elem],
        stop: impl Fn(&Sub) -> bool,
    ) -> Option<Sub> {
        let mut cur = self.extend(start, extra);
        if stop(&cur) {
            return None;
        }
        let mut checked = start.gens.len();
        while checked < cur.gens.len() {
            let x = cur.gens[checked];
            checked += 1;
            for &s in &top.gens {
                let c = self.conj(x, s);
                if !cur.contains(c) {
                    cur = self.extend(&cur, &[c]);
                    if stop(&cur) {
                        return None;
                    }
                }
            }
        }
        Some(cur)
    }

    pub fn normal_closure(&self, top: &Sub, elems: &[Elem]) -> Sub {
        self.normal_closure_from(top, &self.trivial(), elems)
    }

    /// Subgroup generated by an arbitrary element set.
    pub fn sub_from_set(&self, set: &ElemSet) -> Sub {
        let mut cur = self.trivial();
        for x in set.iter() {
            if !cur.contains(x) {
                cur = self.extend(&cur, &[x]);
            }
        }
        cur
    }

    pub fn intersection(&self, a: &Sub, b: &Sub) -> Sub {
        if a.is_subgroup_of(b) {
            return a.clone();
        }
        if b.is_subgroup_of(a) {
            return b.clone();
        }
        self.sub_from_set(&a.set.intersection(&b.set))
    }

    /// [A, B] for subgroups normalized by `top`.
    pub fn commutator(&self, top: &Sub, a: &Sub, b: &Sub) -> Sub {
        let mut comms = Vec::new();
        for &x in &a.gens {
            for &y in &b.gens {
                let c = self.comm(x, y);
                if c != 0 {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(top, &comms)
    }

    /// Elements of `top` commuting with every element of `with` modulo `bottom`.
    pub fn centralizer_mod(&self, top: &Sub, with: &[Elem], bottom: Option<&Sub>) -> Sub {
        let mut set = ElemSet::new(self.n);
        for x in top.elements() {
            let ok = with.iter().all(|&h| {
                let c = self.comm(x, h);
                match bottom {
                    Some(b) => b.contains(c),
                    None => c == 0,
                }
            });
            if ok {
                set.insert(x);
            }
        }
        let mut c = match bottom {
            Some(b) => b.clone(),
            None => self.trivial(),
        };
        for x in set.iter() {
            if !c.contains(x) {
                c = self.extend(&c, &[x]);
            }
        }
        c
    }

    pub fn centralizer_of(&self, top: &Sub, with: &[Elem]) -> Sub {
        self.centralizer_mod(top, with, None)
    }

    pub fn is_normalized_by(&self, n: &Sub, top: &Sub) -> bool {
        n.gens
            .iter()
            .all(|&x| top.gens.iter().all(|&s| n.contains(self.conj(x, s))))
    }

    pub fn sub_from_group(&self, g: &PermutationGroup) -> Result<Sub> {
        let gens = g
            .generators()
            .iter()
            .map(|p| self.index_of(p).ok_or(Error::NotSubgroup))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.closure(&gens))
    }

    pub fn to_group(&self, s: &Sub) -> PermutationGroup {
        let gens = s.gens.iter().map(|&x| self.permutation(x)).collect();
        PermutationGroup::new(self.degree(), gens).expect("elements share the universe degree")
    }

    // ----- cached class data -----

    fn set_id(&self, s: &Sub) -> usize {
        let mut c = self.caches.lock().expect("cache lock");
        let next = c.ids.len();
        *c.ids.entry((*s.set).clone()).or_insert(next)
    }

    /// Conjugacy classes of `top` (as a group in its own right), ordered by
    /// class size then representative. Representatives are the smallest
    /// element index in each class.
    pub fn classes(&self, top: &Sub) -> Arc<Vec<ClassInfo>> {
        let id = self.set_id(top);
        if let Some(c) = self.caches.lock().expect("cache lock").classes.get(&id) {
            return Arc::clone(c);
        }
        let mut seen = ElemSet::new(self.n);
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for x in top.elements() {
            if seen.contains(x) {
                continue;
            }
            seen.insert(x);
            stack.push(x);
            let mut size = 0;
            while let Some(y) = stack.pop() {
                size += 1;
                for &s in &top.gens {
                    let z = self.conj(y, s);
                    if seen.insert(z) {
                        stack.push(z);
                    }
                }
            }
            out.push(ClassInfo { rep: x, size });
        }
        out.sort_by_key(|c| (c.size, c.rep));
        let out = Arc::new(out);
        self.caches
            .lock()
            .expect("cache lock")
            .classes
            .insert(id, Arc::clone(&out));
        out
    }

    /// Normal closure of `rep` in `top`, memoized.
    pub fn class_closure(&self, top: &Sub, rep: Elem) -> Sub {
        let id = self.set_id(top);
        if let Some(s) = self.caches.lock().expect("cache lock").closures.get(&(id, rep)) {
            return s.clone();
        }
        let s = self.normal_closure(top, &[rep]);
        self.caches
            .lock()
            .expect("cache lock")
            .closures
            .insert((id, rep), s.clone());
        s
    }

    /// `bottom ∨ ⟨rep^top⟩` for `bottom` normal in `top`.
    pub fn closure_above(&self, top: &Sub, bottom: &Sub, rep: Elem) -> Sub {
        let c = self.class_closure(top, rep);
        self.join(bottom, &c)
    }
}
