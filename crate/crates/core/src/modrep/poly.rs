//! Univariate polynomials over prime fields, characteristic polynomials and
//! factorization into irreducibles.

use rand::Rng;

use super::matrix::{inv_mod, Matrix};

/// Coefficients from the constant term up, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    q: u32,
    c: Vec<u32>,
}

impl Poly {
    pub fn new(q: u32, mut c: Vec<u32>) -> Self {
        for x in c.iter_mut() {
            *x %= q;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { q, c }
    }

    pub fn zero(q: u32) -> Self {
        Poly { q, c: Vec::new() }
    }

    pub fn one(q: u32) -> Self {
        Poly::new(q, vec![1])
    }

    /// `x`.
    pub fn x(q: u32) -> Self {
        Poly::new(q, vec![0, 1])
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    /// Degree; the zero polynomial has degree 0 here.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn lead(&self) -> u32 {
        *self.c.last().unwrap_or(&0)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.lead(), self.q) as u64;
        Poly::new(
            self.q,
            self.c.iter().map(|&x| (x as u64 * inv % self.q as u64) as u32).collect(),
        )
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| (self.c.get(i).unwrap_or(&0) + o.c.get(i).unwrap_or(&0)) % self.q)
            .collect();
        Poly::new(self.q, c)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| (self.c.get(i).unwrap_or(&0) + self.q - o.c.get(i).unwrap_or(&0)) % self.q)
            .collect();
        Poly::new(self.q, c)
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.q);
        }
        let q = self.q as u64;
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + a as u64 * b as u64) % q;
            }
        }
        Poly::new(self.q, c.into_iter().map(|x| x as u32).collect())
    }

    pub fn scale(&self, s: u32) -> Poly {
        Poly::new(
            self.q,
            self.c.iter().map(|&x| (x as u64 * s as u64 % self.q as u64) as u32).collect(),
        )
    }

    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let q = self.q as u64;
        let mut r = self.c.clone();
        let dl = d.c.len();
        if r.len() < dl {
            return (Poly::zero(self.q), self.clone());
        }
        let inv = inv_mod(d.lead(), self.q) as u64;
        let mut quot = vec![0u32; r.len() - dl + 1];
        for k in (0..quot.len()).rev() {
            let f = r[k + dl - 1] as u64 * inv % q;
            quot[k] = f as u32;
            if f == 0 {
                continue;
            }
            for (j, &b) in d.c.iter().enumerate() {
                r[k + j] = ((r[k + j] as u64 + (q - f) * b as u64) % q) as u32;
            }
        }
        (Poly::new(self.q, quot), Poly::new(self.q, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    pub fn div(&self, d: &Poly) -> Poly {
        self.divrem(d).0
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let q = self.q as u64;
        Poly::new(
            self.q,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| (a as u64 * (i as u64 % q) % q) as u32)
                .collect(),
        )
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut acc = Poly::one(self.q).rem(m);
        let mut b = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b).rem(m);
            }
            b = b.mul(&b).rem(m);
            e >>= 1;
        }
        acc
    }

    /// `f(A)` by Horner's rule.
    pub fn eval_matrix(&self, a: &Matrix) -> Matrix {
        let n = a.rows();
        let mut acc = Matrix::zero(self.q, n, n);
        let id = Matrix::identity(self.q, n);
        for &c in self.c.iter().rev() {
            acc = acc.mul(a).add(&id.scale(c));
        }
        acc
    }
}

/// Characteristic polynomial `det(x I - A)` via reduction to Hessenberg form.
pub fn char_poly(a: &Matrix) -> Poly {
    let q = a.modulus();
    let qq = q as u64;
    let n = a.rows();
    let mut h: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| a.get(i, j) as u64).collect())
        .collect();
    for j in 0..n.saturating_sub(2) {
        let Some(p) = (j + 1..n).find(|&i| h[i][j] != 0) else {
            continue;
        };
        if p != j + 1 {
            h.swap(p, j + 1);
            for row in h.iter_mut() {
                row.swap(p, j + 1);
            }
        }
        let inv = inv_mod(h[j + 1][j] as u32, q) as u64;
        for k in j + 2..n {
            let u = h[k][j] * inv % qq;
            if u == 0 {
                continue;
            }
            for c in 0..n {
                h[k][c] = (h[k][c] + (qq - u) * h[j + 1][c]) % qq;
            }
            for row in h.iter_mut() {
                row[j + 1] = (row[j + 1] + u * row[k]) % qq;
            }
        }
    }
    // p_m = (x - h_mm) p_{m-1} - sum_i t_i h_{m-i,m} p_{m-i-1}
    let mut ps: Vec<Poly> = vec![Poly::one(q)];
    for m in 0..n {
        let lin = Poly::new(q, vec![(qq - h[m][m]) as u32 % q, 1]);
        let mut pm = lin.mul(&ps[m]);
        let mut t = 1u64;
        for i in 1..=m {
            t = t * h[m - i + 1][m - i] % qq;
            let coef = t * h[m - i][m] % qq;
            if coef != 0 {
                pm = pm.sub(&ps[m - i].scale(coef as u32));
            }
        }
        ps.push(pm);
    }
    ps.pop().unwrap()
}

fn pth_root(f: &Poly) -> Poly {
    let p = f.q as usize;
    Poly::new(f.q, f.c.iter().step_by(p).copied().collect())
}

/// Square-free decomposition: pairs `(g, m)` with `f = ∏ g^m`, `g` square-free.
pub fn squarefree(f: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    let f = f.monic();
    if f.degree() == 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div(&y);
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.div(&w);
        i += 1;
    }
    if !c.is_one() {
        for (g, m) in squarefree(&pth_root(&c)) {
            out.push((g, m * f.q));
        }
    }
    out
}

/// Distinct-degree factorization of a monic square-free polynomial.
fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let q = f.q;
    let mut out = Vec::new();
    let mut f = f.clone();
    let x = Poly::x(q);
    let mut h = x.rem(&f);
    let mut i = 1;
    while f.degree() >= 2 * i {
        h = h.pow_mod(q as u64, &f);
        let g = f.gcd(&h.sub(&x));
        if !g.is_one() {
            out.push((g.clone(), i));
            f = f.div(&g);
            h = h.rem(&f);
        }
        i += 1;
    }
    if f.degree() > 0 {
        let d = f.degree();
        out.push((f, d));
    }
    out
}

/// Splits a product of distinct irreducibles of degree `d` (Cantor–Zassenhaus).
fn equal_degree<R: Rng>(f: &Poly, d: usize, rng: &mut R, out: &mut Vec<Poly>) {
    if f.degree() == d {
        out.push(f.monic());
        return;
    }
    let q = f.q;
    loop {
        let a = Poly::new(q, (0..f.degree()).map(|_| rng.gen_range(0..q)).collect());
        if a.degree() == 0 {
            continue;
        }
        let b = if q == 2 {
            // trace map a + a^2 + ... + a^(2^(d-1))
            let mut t = a.rem(f);
            let mut s = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                s = s.add(&t);
            }
            s
        } else {
            // a^((q^d - 1)/2) = (a^(1 + q + ... + q^(d-1)))^((q-1)/2)
            let mut t = a.rem(f);
            let mut norm = t.clone();
            for _ in 1..d {
                t = t.pow_mod(q as u64, f);
                norm = norm.mul(&t).rem(f);
            }
            norm.pow_mod((q as u64 - 1) / 2, f).sub(&Poly::one(q))
        };
        let g = f.gcd(&b);
        if g.degree() > 0 && g.degree() < f.degree() {
            equal_degree(&g, d, rng, out);
            equal_degree(&f.div(&g), d, rng, out);
            return;
        }
    }
}

/// Monic irreducible factors with multiplicities, sorted by degree then coefficients.
pub fn factor<R: Rng>(f: &Poly, rng: &mut R) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    for (g, m) in squarefree(f) {
        for (h, d) in distinct_degree(&g) {
            let mut parts = Vec::new();
            equal_degree(&h, d, rng, &mut parts);
            out.extend(parts.into_iter().map(|p| (p, m)));
        }
    }
    out.sort_by(|a, b| (a.0.degree(), &a.0.c).cmp(&(b.0.degree(), &b.0.c)));
    out
}
