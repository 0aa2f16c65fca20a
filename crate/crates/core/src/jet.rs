//! Truncated Taylor (jet) arithmetic in one variable, up to fourth order.
//!
//! Used to evaluate closed-form derivatives of the reduced Hamiltonian in the
//! action `p` without hand-differentiating products of square roots.

/// Taylor coefficients `[f, f', f''/2!, f'''/3!, f''''/4!]` at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet(pub [f64; 5]);

impl Jet {
    pub fn constant(c: f64) -> Self {
        Jet([c, 0.0, 0.0, 0.0, 0.0])
    }

    /// The identity jet `x ↦ x` at base point `x0`.
    pub fn variable(x0: f64) -> Self {
        Jet([x0, 1.0, 0.0, 0.0, 0.0])
    }

    pub fn value(&self) -> f64 {
        self.0[0]
    }

    /// k-th derivative (k <= 4).
    pub fn derivative(&self, k: usize) -> f64 {
        const FACT: [f64; 5] = [1.0, 1.0, 2.0, 6.0, 24.0];
        self.0[k] * FACT[k]
    }

    pub fn add(&self, o: &Jet) -> Jet {
        let mut r = [0.0; 5];
        for i in 0..5 {
            r[i] = self.0[i] + o.0[i];
        }
        Jet(r)
    }

    pub fn sub(&self, o: &Jet) -> Jet {
        let mut r = [0.0; 5];
        for i in 0..5 {
            r[i] = self.0[i] - o.0[i];
        }
        Jet(r)
    }

    pub fn scale(&self, c: f64) -> Jet {
        let mut r = self.0;
        for v in r.iter_mut() {
            *v *= c;
        }
        Jet(r)
    }

    pub fn mul(&self, o: &Jet) -> Jet {
        let mut r = [0.0; 5];
        for i in 0..5 {
            for j in 0..5 - i {
                r[i + j] += self.0[i] * o.0[j];
            }
        }
        Jet(r)
    }

    pub fn powi(&self, n: u32) -> Jet {
        let mut r = Jet::constant(1.0);
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }

    /// Square root of a jet with strictly positive value.
    pub fn sqrt(&self) -> Jet {
        let a0 = self.0[0];
        assert!(a0 > 0.0, "jet sqrt of non-positive value {a0}");
        let s0 = a0.sqrt();
        // solve s*s = self order by order
        let mut s = [s0, 0.0, 0.0, 0.0, 0.0];
        for k in 1..5 {
            let mut conv = 0.0;
            for i in 1..k {
                conv += s[i] * s[k - i];
            }
            s[k] = (self.0[k] - conv) / (2.0 * s0);
        }
        Jet(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_derivatives() {
        // f(x) = x^3 at x = 2: f=8, f'=12, f''=12, f'''=6, f''''=0
        let x = Jet::variable(2.0);
        let f = x.powi(3);
        assert_eq!(f.value(), 8.0);
        assert_eq!(f.derivative(1), 12.0);
        assert_eq!(f.derivative(2), 12.0);
        assert_eq!(f.derivative(3), 6.0);
        assert_eq!(f.derivative(4), 0.0);
    }

    #[test]
    fn sqrt_jet_matches_closed_form() {
        // f(x) = sqrt(x) at x = 4: f' = 1/4, f'' = -1/32, f''' = 3/256, f'''' = -15/2048
        let f = Jet::variable(4.0).sqrt();
        assert!((f.value() - 2.0).abs() < 1e-15);
        assert!((f.derivative(1) - 0.25).abs() < 1e-15);
        assert!((f.derivative(2) + 1.0 / 32.0).abs() < 1e-15);
        assert!((f.derivative(3) - 3.0 / 256.0).abs() < 1e-14);
        assert!((f.derivative(4) + 15.0 / 2048.0).abs() < 1e-14);
    }

    #[test]
    fn product_rule() {
        // (x^2 * sqrt(x))' = 2.5 x^1.5 at x = 1.44
        let x = Jet::variable(1.44);
        let f = x.powi(2).mul(&x.sqrt());
        let expect = 2.5 * 1.44f64.powf(1.5);
        assert!((f.derivative(1) - expect).abs() < 1e-12);
    }
}
