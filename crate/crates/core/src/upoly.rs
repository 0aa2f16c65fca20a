//! Sparse polynomials in the Fourier amplitudes `u_j`, `ū_j`.
//!
//! This is the algebra in which the Birkhoff step is performed, before the
//! tangential/normal split. A monomial is a pair of finitely supported
//! exponent maps (one for `u`, one for `ū`) with a complex coefficient. The
//! Poisson bracket is the one induced by the symplectic form
//! `i Σ_k du_k ∧ dū_k`:
//!
//! `{f,g} = i Σ_k (∂f/∂u_k ∂g/∂ū_k − ∂f/∂ū_k ∂g/∂u_k)`.

use std::collections::BTreeMap;

use num_complex::Complex64;

/// Finitely supported exponent map, sorted by mode index.
pub type Exps = Vec<(i64, u32)>;

fn exps_normalize(e: &mut Exps) {
    e.retain(|&(_, p)| p > 0);
    e.sort_unstable_by_key(|&(k, _)| k);
}

fn exps_get(e: &Exps, k: i64) -> u32 {
    e.iter().find(|&&(m, _)| m == k).map_or(0, |&(_, p)| p)
}

fn exps_add(a: &Exps, b: &Exps) -> Exps {
    let mut out = a.clone();
    for &(k, p) in b {
        match out.iter_mut().find(|(m, _)| *m == k) {
            Some((_, q)) => *q += p,
            None => out.push((k, p)),
        }
    }
    exps_normalize(&mut out);
    out
}

/// Decrement mode `k` by one; `None` if the exponent is zero.
fn exps_dec(e: &Exps, k: i64) -> Option<Exps> {
    let p = exps_get(e, k);
    if p == 0 {
        return None;
    }
    let mut out = e.clone();
    for entry in out.iter_mut() {
        if entry.0 == k {
            entry.1 -= 1;
        }
    }
    exps_normalize(&mut out);
    Some(out)
}

fn exps_total(e: &Exps) -> u32 {
    e.iter().map(|&(_, p)| p).sum()
}

/// Monomial key `u^a ū^b`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UMono {
    pub a: Exps,
    pub b: Exps,
}

impl UMono {
    pub fn new(mut a: Exps, mut b: Exps) -> Self {
        exps_normalize(&mut a);
        exps_normalize(&mut b);
        Self { a, b }
    }

    /// Total polynomial degree `|a| + |b|`.
    pub fn degree(&self) -> u32 {
        exps_total(&self.a) + exps_total(&self.b)
    }

    /// Σ_k k (a_k − b_k), the momentum carried by the monomial.
    pub fn momentum(&self) -> i64 {
        let mut m = 0;
        for &(k, p) in &self.a {
            m += k * p as i64;
        }
        for &(k, p) in &self.b {
            m -= k * p as i64;
        }
        m
    }

    /// Σ_k k² (a_k − b_k), the energy divisor of the monomial.
    pub fn energy(&self) -> i64 {
        let mut m = 0;
        for &(k, p) in &self.a {
            m += k * k * p as i64;
        }
        for &(k, p) in &self.b {
            m -= k * k * p as i64;
        }
        m
    }

    /// Σ_k (a_k − b_k), the gauge charge of the monomial.
    pub fn charge(&self) -> i64 {
        exps_total(&self.a) as i64 - exps_total(&self.b) as i64
    }

    /// Number of factors supported outside `set`.
    pub fn normal_count(&self, is_tangential: impl Fn(i64) -> bool) -> u32 {
        let mut n = 0;
        for &(k, p) in self.a.iter().chain(self.b.iter()) {
            if !is_tangential(k) {
                n += p;
            }
        }
        n
    }

    pub fn support_max_abs(&self) -> i64 {
        self.a
            .iter()
            .chain(self.b.iter())
            .map(|&(k, _)| k.abs())
            .max()
            .unwrap_or(0)
    }
}

/// Sparse polynomial in `(u, ū)` with complex coefficients.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct UPoly {
    pub terms: BTreeMap<UMono, Complex64>,
}

impl UPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, m: UMono, c: Complex64) {
        if c == Complex64::new(0.0, 0.0) {
            return;
        }
        let e = self.terms.entry(m).or_insert(Complex64::new(0.0, 0.0));
        *e += c;
        if *e == Complex64::new(0.0, 0.0) {
            // remove exact zeros produced by cancellation
            let key = self
                .terms
                .iter()
                .find(|(_, &v)| v == Complex64::new(0.0, 0.0))
                .map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &UMono) -> Complex64 {
        self.terms.get(m).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = Self::zero();
        for (m, &v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, &v) in &other.terms {
            out.add_term(m.clone(), v);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, &c1) in &self.terms {
            for (m2, &c2) in &other.terms {
                out.add_term(
                    UMono::new(exps_add(&m1.a, &m2.a), exps_add(&m1.b, &m2.b)),
                    c1 * c2,
                );
            }
        }
        out
    }

    /// Drop terms with |coeff| <= eps.
    pub fn pruned(&self, eps: f64) -> Self {
        let mut out = Self::zero();
        for (m, &c) in &self.terms {
            if c.norm() > eps {
                out.add_term(m.clone(), c);
            }
        }
        out
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Keep terms accepted by `pred`.
    pub fn filter(&self, pred: impl Fn(&UMono) -> bool) -> Self {
        let mut out = Self::zero();
        for (m, &c) in &self.terms {
            if pred(m) {
                out.add_term(m.clone(), c);
            }
        }
        out
    }

    /// A real-valued polynomial satisfies coeff(b,a) = conj(coeff(a,b)).
    pub fn is_real(&self, tol: f64) -> bool {
        self.terms.iter().all(|(m, &c)| {
            let conj = UMono::new(m.b.clone(), m.a.clone());
            (self.coeff(&conj) - c.conj()).norm() <= tol
        })
    }

    /// Poisson bracket with respect to `i Σ du ∧ dū`.
    ///
    /// `pair_filter` can reject term pairs early (used to cap the normal-mode
    /// count of products during remainder computations).
    pub fn poisson_filtered(
        &self,
        other: &Self,
        pair_filter: impl Fn(&UMono, &UMono) -> bool,
    ) -> Self {
        let i = Complex64::new(0.0, 1.0);
        let mut out = Self::zero();
        for (m1, &c1) in &self.terms {
            for (m2, &c2) in &other.terms {
                if !pair_filter(m1, m2) {
                    continue;
                }
                // ∂f/∂u_k ∂g/∂ū_k over shared support
                for &(k, p1) in &m1.a {
                    let q2 = exps_get(&m2.b, k);
                    if q2 == 0 {
                        continue;
                    }
                    let da = exps_dec(&m1.a, k).unwrap();
                    let db = exps_dec(&m2.b, k).unwrap();
                    let m = UMono::new(exps_add(&da, &m2.a), exps_add(&m1.b, &db));
                    out.add_term(m, i * c1 * c2 * (p1 as f64) * (q2 as f64));
                }
                // − ∂f/∂ū_k ∂g/∂u_k
                for &(k, p1) in &m1.b {
                    let q2 = exps_get(&m2.a, k);
                    if q2 == 0 {
                        continue;
                    }
                    let db = exps_dec(&m1.b, k).unwrap();
                    let da = exps_dec(&m2.a, k).unwrap();
                    let m = UMono::new(exps_add(&m1.a, &da), exps_add(&db, &m2.b));
                    out.add_term(m, -i * c1 * c2 * (p1 as f64) * (q2 as f64));
                }
            }
        }
        out
    }

    pub fn poisson(&self, other: &Self) -> Self {
        self.poisson_filtered(other, |_, _| true)
    }

    /// Evaluate at a complex amplitude vector given by `u(k)`.
    pub fn eval(&self, u: impl Fn(i64) -> Complex64) -> Complex64 {
        let mut total = Complex64::new(0.0, 0.0);
        for (m, &c) in &self.terms {
            let mut v = c;
            for &(k, p) in &m.a {
                v *= u(k).powu(p);
            }
            for &(k, p) in &m.b {
                v *= u(k).conj().powu(p);
            }
            total += v;
        }
        total
    }
}

/// Build `Σ_j w(j) |u_j|²` over `|j| <= cut`.
pub fn diagonal_quadratic(cut: i64, w: impl Fn(i64) -> f64) -> UPoly {
    let mut p = UPoly::zero();
    for j in -cut..=cut {
        let c = w(j);
        if c != 0.0 {
            p.add_term(
                UMono::new(vec![(j, 1)], vec![(j, 1)]),
                Complex64::new(c, 0.0),
            );
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn bracket_harmonic_pair() {
        // {|u_5|^2, u_5} = -i u_5
        let mut f = UPoly::zero();
        f.add_term(UMono::new(vec![(5, 1)], vec![(5, 1)]), c(1.0, 0.0));
        let mut g = UPoly::zero();
        g.add_term(UMono::new(vec![(5, 1)], vec![]), c(1.0, 0.0));
        let br = f.poisson(&g);
        assert_eq!(br.len(), 1);
        assert_eq!(br.coeff(&UMono::new(vec![(5, 1)], vec![])), c(0.0, -1.0));
    }

    #[test]
    fn bracket_antisymmetric() {
        let mut f = UPoly::zero();
        f.add_term(UMono::new(vec![(1, 2)], vec![(2, 1)]), c(2.0, 0.0));
        f.add_term(UMono::new(vec![(3, 1)], vec![(1, 1)]), c(0.0, 1.0));
        let mut g = UPoly::zero();
        g.add_term(UMono::new(vec![(2, 1)], vec![(3, 1)]), c(1.0, -1.0));
        g.add_term(UMono::new(vec![(1, 1)], vec![(1, 1)]), c(3.0, 0.0));
        let fg = f.poisson(&g);
        let gf = g.poisson(&f);
        assert_eq!(fg, gf.scale(c(-1.0, 0.0)));
    }

    #[test]
    fn jacobi_identity_exact() {
        // Integer coefficients stay exact in f64, so the Jacobi sum cancels
        // to exactly zero coefficient by coefficient.
        let mut f = UPoly::zero();
        f.add_term(UMono::new(vec![(1, 1), (2, 1)], vec![(3, 1)]), c(2.0, 0.0));
        f.add_term(UMono::new(vec![(0, 2)], vec![(1, 1)]), c(0.0, 3.0));
        let mut g = UPoly::zero();
        g.add_term(UMono::new(vec![(3, 1)], vec![(2, 1), (0, 1)]), c(1.0, 0.0));
        g.add_term(UMono::new(vec![(2, 1)], vec![(2, 1)]), c(5.0, 0.0));
        let mut h = UPoly::zero();
        h.add_term(UMono::new(vec![(1, 1)], vec![(0, 1)]), c(0.0, -2.0));
        h.add_term(UMono::new(vec![(2, 2)], vec![(1, 1), (3, 1)]), c(1.0, 1.0));

        let s = f
            .poisson(&g)
            .poisson(&h)
            .add(&g.poisson(&h).poisson(&f))
            .add(&h.poisson(&f).poisson(&g));
        assert!(s.is_zero(), "jacobi residual: {:?}", s.terms);
    }

    #[test]
    fn bracket_matches_numerical_gradient_evaluation() {
        // Independent route: evaluate {f,g} from central-difference partials
        // of f and g at a point, and compare against the symbolic bracket.
        let mut f = UPoly::zero();
        f.add_term(UMono::new(vec![(1, 2)], vec![(2, 1)]), c(1.5, 0.0));
        f.add_term(UMono::new(vec![(-1, 1)], vec![(-1, 1)]), c(0.0, 2.0));
        let mut g = UPoly::zero();
        g.add_term(UMono::new(vec![(2, 1)], vec![(1, 1)]), c(1.0, -0.5));
        g.add_term(UMono::new(vec![(1, 1), (-1, 1)], vec![(2, 1)]), c(2.0, 1.0));

        let point = |k: i64| match k {
            1 => c(0.3, -0.2),
            -1 => c(-0.4, 0.1),
            2 => c(0.2, 0.5),
            _ => c(0.0, 0.0),
        };
        let modes = [-1i64, 1, 2];
        let h = 1e-5;
        let partial = |p: &UPoly, k: i64, wrt_bar: bool| -> Complex64 {
            // d/du = (d/dRe - i d/dIm)/2, d/dū = (d/dRe + i d/dIm)/2
            let bump = |dr: f64, di: f64| {
                let f = |m: i64| {
                    if m == k {
                        point(m) + c(dr, di)
                    } else {
                        point(m)
                    }
                };
                p.eval(f)
            };
            let dre = (bump(h, 0.0) - bump(-h, 0.0)) / (2.0 * h);
            let dim = (bump(0.0, h) - bump(0.0, -h)) / (2.0 * h);
            if wrt_bar {
                (dre + c(0.0, 1.0) * dim) / 2.0
            } else {
                (dre - c(0.0, 1.0) * dim) / 2.0
            }
        };
        let mut numeric = c(0.0, 0.0);
        for &k in &modes {
            numeric += c(0.0, 1.0)
                * (partial(&f, k, false) * partial(&g, k, true)
                    - partial(&f, k, true) * partial(&g, k, false));
        }
        let symbolic = f.poisson(&g).eval(point);
        assert!(
            (numeric - symbolic).norm() < 1e-8,
            "numeric {numeric} vs symbolic {symbolic}"
        );
    }

    #[test]
    fn reality_check() {
        let mut f = UPoly::zero();
        f.add_term(UMono::new(vec![(1, 1)], vec![(2, 1)]), c(1.0, 2.0));
        f.add_term(UMono::new(vec![(2, 1)], vec![(1, 1)]), c(1.0, -2.0));
        assert!(f.is_real(0.0));
        let mut g = UPoly::zero();
        g.add_term(UMono::new(vec![(1, 1)], vec![]), c(1.0, 0.0));
        assert!(!g.is_real(0.0));
    }
}
