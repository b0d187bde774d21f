//! Truncated Taylor-series machinery shared by the potential families, the
//! eikonal solver and the transport-equation recurrence.
//!
//! Everything here is dense and tiny: dimensions are 1 or 2 and truncation
//! orders stay below ~30, so no sparse or symbolic representation is needed.

use num_complex::Complex64 as C64;

/// Multi-index over n = 1 or 2 variables.
pub type MultiIndex = Vec<u32>;

pub fn multi_index_order(alpha: &[u32]) -> u32 {
    alpha.iter().sum()
}

/// Enumerate all multi-indices of dimension `n` with total order <= `order`,
/// sorted by (order, lexicographic).
pub fn multi_indices(n: usize, order: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    match n {
        1 => {
            for i in 0..=order {
                out.push(vec![i]);
            }
        }
        2 => {
            for d in 0..=order {
                for i in (0..=d).rev() {
                    out.push(vec![i, d - i]);
                }
            }
        }
        _ => panic!("only n = 1 or 2 supported"),
    }
    out
}

/// Dense table of monomial coefficients: p(x) = sum over |alpha| <= order of
/// c[alpha] x^alpha. Dimension n is 1 or 2.
#[derive(Debug, Clone, PartialEq)]
pub struct MonoTable {
    n: usize,
    order: u32,
    c: Vec<f64>,
}

fn tri_len(order: u32) -> usize {
    let k = order as usize;
    (k + 1) * (k + 2) / 2
}

impl MonoTable {
    pub fn zeros(n: usize, order: u32) -> Self {
        assert!(n == 1 || n == 2, "only n = 1 or 2 supported");
        let len = if n == 1 {
            order as usize + 1
        } else {
            tri_len(order)
        };
        MonoTable {
            n,
            order,
            c: vec![0.0; len],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    fn idx(&self, alpha: &[u32]) -> usize {
        debug_assert_eq!(alpha.len(), self.n);
        if self.n == 1 {
            alpha[0] as usize
        } else {
            let d = alpha[0] + alpha[1];
            // offset of degree block d, then position by second component
            let off = (d as usize) * (d as usize + 1) / 2;
            off + alpha[1] as usize
        }
    }

    pub fn get(&self, alpha: &[u32]) -> f64 {
        if multi_index_order(alpha) > self.order {
            return 0.0;
        }
        self.c[self.idx(alpha)]
    }

    pub fn set(&mut self, alpha: &[u32], v: f64) {
        let i = self.idx(alpha);
        self.c[i] = v;
    }

    pub fn add_to(&mut self, alpha: &[u32], v: f64) {
        let i = self.idx(alpha);
        self.c[i] += v;
    }

    /// Iterate (alpha, coefficient) over all stored entries.
    pub fn iter(&self) -> impl Iterator<Item = (MultiIndex, f64)> + '_ {
        multi_indices(self.n, self.order)
            .into_iter()
            .map(move |a| {
                let v = self.get(&a);
                (a, v)
            })
    }

    /// Partial derivative with respect to coordinate `d` (order drops by one).
    pub fn derivative(&self, d: usize) -> MonoTable {
        assert!(d < self.n);
        let new_order = self.order.saturating_sub(1);
        let mut out = MonoTable::zeros(self.n, new_order);
        for (alpha, v) in self.iter() {
            if alpha[d] == 0 || v == 0.0 {
                continue;
            }
            let mut b = alpha.clone();
            b[d] -= 1;
            out.add_to(&b, v * alpha[d] as f64);
        }
        out
    }

    pub fn laplacian(&self) -> MonoTable {
        let mut out = MonoTable::zeros(self.n, self.order.saturating_sub(2));
        for d in 0..self.n {
            let dd = self.derivative(d).derivative(d);
            for (alpha, v) in dd.iter() {
                if v != 0.0 {
                    out.add_to(&alpha, v);
                }
            }
        }
        out
    }

    /// Product truncated at `order`.
    pub fn mul_trunc(&self, other: &MonoTable, order: u32) -> MonoTable {
        assert_eq!(self.n, other.n);
        let mut out = MonoTable::zeros(self.n, order);
        for (a, va) in self.iter() {
            if va == 0.0 {
                continue;
            }
            for (b, vb) in other.iter() {
                if vb == 0.0 {
                    continue;
                }
                let s: MultiIndex = a.iter().zip(&b).map(|(x, y)| x + y).collect();
                if multi_index_order(&s) <= order {
                    out.add_to(&s, va * vb);
                }
            }
        }
        out
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (a, v) in self.iter() {
            if v == 0.0 {
                continue;
            }
            let mut m = v;
            for (d, &p) in a.iter().enumerate() {
                m *= x[d].powi(p as i32);
            }
            acc += m;
        }
        acc
    }

    pub fn eval_c(&self, z: &[C64]) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for (a, v) in self.iter() {
            if v == 0.0 {
                continue;
            }
            let mut m = C64::new(v, 0.0);
            for (d, &p) in a.iter().enumerate() {
                m *= z[d].powi(p as i32);
            }
            acc += m;
        }
        acc
    }
}

/// Truncated 1D power series with f64 coefficients; coefficient k multiplies x^k.
/// Used to build exact Taylor tables of the builtin potential families.
#[derive(Debug, Clone)]
pub struct Series1 {
    pub c: Vec<f64>,
}

impl Series1 {
    pub fn zeros(order: usize) -> Self {
        Series1 {
            c: vec![0.0; order + 1],
        }
    }

    pub fn constant(v: f64, order: usize) -> Self {
        let mut s = Series1::zeros(order);
        s.c[0] = v;
        s
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn scale(&self, v: f64) -> Series1 {
        Series1 {
            c: self.c.iter().map(|x| x * v).collect(),
        }
    }

    pub fn add(&self, other: &Series1) -> Series1 {
        let n = self.c.len().max(other.c.len());
        let mut c = vec![0.0; n];
        for (i, v) in self.c.iter().enumerate() {
            c[i] += v;
        }
        for (i, v) in other.c.iter().enumerate() {
            c[i] += v;
        }
        Series1 { c }
    }

    pub fn mul(&self, other: &Series1, order: usize) -> Series1 {
        let mut c = vec![0.0; order + 1];
        for (i, a) in self.c.iter().enumerate() {
            if *a == 0.0 || i > order {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if i + j > order {
                    break;
                }
                c[i + j] += a * b;
            }
        }
        Series1 { c }
    }

    /// Reciprocal 1/self; requires nonzero constant term.
    pub fn recip(&self, order: usize) -> Series1 {
        let a0 = self.c[0];
        assert!(a0 != 0.0, "reciprocal of series with zero constant term");
        let mut r = vec![0.0; order + 1];
        r[0] = 1.0 / a0;
        for k in 1..=order {
            let mut s = 0.0;
            for j in 1..=k.min(self.c.len() - 1) {
                s += self.c[j] * r[k - j];
            }
            r[k] = -s / a0;
        }
        Series1 { c: r }
    }

    /// exp(self); requires zero constant term (the constant factor is applied
    /// by the caller). Solves E' = u' E term by term.
    pub fn exp(&self, order: usize) -> Series1 {
        assert!(self.c[0] == 0.0, "exp expects zero constant term");
        let mut e = vec![0.0; order + 1];
        e[0] = 1.0;
        for k in 1..=order {
            // k e_k = sum_{j=1..k} j u_j e_{k-j}
            let mut s = 0.0;
            for j in 1..=k.min(self.c.len() - 1) {
                s += j as f64 * self.c[j] * e[k - j];
            }
            e[k] = s / k as f64;
        }
        Series1 { c: e }
    }

    /// Substitute x -> s*x (rescale the variable).
    pub fn rescale_var(&self, s: f64) -> Series1 {
        let mut c = self.c.clone();
        let mut p = 1.0;
        for v in c.iter_mut() {
            *v *= p;
            p *= s;
        }
        Series1 { c }
    }

    /// tanh(x) as a series to the given order.
    pub fn tanh(order: usize) -> Series1 {
        // t' = 1 - t^2, t(0) = 0
        let mut t = vec![0.0; order + 1];
        if order >= 1 {
            t[1] = 1.0;
        }
        for k in 2..=order {
            // k t_k = [x^{k-1}](1 - t^2) = -(t^2)_{k-1} for k >= 2
            let mut s = 0.0;
            for j in 0..k {
                s += t[j] * t[k - 1 - j];
            }
            t[k] = -s / k as f64;
        }
        Series1 { c: t }
    }

    pub fn to_mono1(&self) -> MonoTable {
        let mut m = MonoTable::zeros(1, self.order() as u32);
        for (i, v) in self.c.iter().enumerate() {
            m.set(&[i as u32], *v);
        }
        m
    }
}

/// Tensor product of two 1D series into a 2D monomial table, truncated at `order`.
pub fn tensor2(sx: &Series1, sy: &Series1, order: u32) -> MonoTable {
    let mut m = MonoTable::zeros(2, order);
    for (i, a) in sx.c.iter().enumerate() {
        for (j, b) in sy.c.iter().enumerate() {
            if (i + j) as u32 <= order && *a != 0.0 && *b != 0.0 {
                m.set(&[i as u32, j as u32], a * b);
            }
        }
    }
    m
}

/// Truncated polynomial with complex coefficients in one formal variable.
/// Used for the sigma-dependence of the transport-recurrence coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyC {
    pub c: Vec<C64>,
}

impl PolyC {
    pub fn zeros(order: usize) -> Self {
        PolyC {
            c: vec![C64::new(0.0, 0.0); order + 1],
        }
    }

    pub fn constant(v: C64, order: usize) -> Self {
        let mut p = PolyC::zeros(order);
        p.c[0] = v;
        p
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn add_assign(&mut self, other: &PolyC) {
        for (i, v) in other.c.iter().enumerate() {
            if i < self.c.len() {
                self.c[i] += v;
            }
        }
    }

    pub fn scale(&self, v: C64) -> PolyC {
        PolyC {
            c: self.c.iter().map(|x| x * v).collect(),
        }
    }

    pub fn mul(&self, other: &PolyC, order: usize) -> PolyC {
        let mut c = vec![C64::new(0.0, 0.0); order + 1];
        for (i, a) in self.c.iter().enumerate() {
            if i > order {
                break;
            }
            for (j, b) in other.c.iter().enumerate() {
                if i + j > order {
                    break;
                }
                c[i + j] += a * b;
            }
        }
        PolyC { c }
    }

    pub fn eval(&self, z: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for v in self.c.iter().rev() {
            acc = acc * z + v;
        }
        acc
    }

    /// 1/(a + b*delta) as a truncated polynomial in delta; requires a != 0.
    pub fn inv_linear(a: C64, b: C64, order: usize) -> PolyC {
        let mut c = vec![C64::new(0.0, 0.0); order + 1];
        let ia = 1.0 / a;
        let mut p = ia;
        for v in c.iter_mut() {
            *v = p;
            p *= -b * ia;
        }
        PolyC { c }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn mono_indexing_roundtrip() {
        let mut m = MonoTable::zeros(2, 5);
        for (k, a) in multi_indices(2, 5).iter().enumerate() {
            m.set(a, k as f64);
        }
        for (k, a) in multi_indices(2, 5).iter().enumerate() {
            assert_eq!(m.get(a), k as f64);
        }
    }

    #[test]
    fn derivative_and_laplacian() {
        // p = x^2 y + 3 y^3
        let mut p = MonoTable::zeros(2, 3);
        p.set(&[2, 1], 1.0);
        p.set(&[0, 3], 3.0);
        let px = p.derivative(0);
        assert_eq!(px.get(&[1, 1]), 2.0);
        let lap = p.laplacian();
        assert_eq!(lap.get(&[0, 1]), 2.0); // from x^2 y
        assert_eq!(lap.get(&[0, 1]) + 0.0, 2.0);
        assert_eq!(lap.get(&[0, 0]), 0.0);
        // d^2/dy^2 (3y^3) = 18 y
        assert_eq!(p.derivative(1).derivative(1).get(&[0, 1]), 18.0);
    }

    #[test]
    fn series_exp_matches_gaussian() {
        // exp(-x^2) coefficients: (-1)^k / k! at x^{2k}
        let mut u = Series1::zeros(10);
        u.c[2] = -1.0;
        let e = u.exp(10);
        let mut fact = 1.0;
        for k in 0..=5 {
            if k > 0 {
                fact *= k as f64;
            }
            assert_relative_eq!(e.c[2 * k], (-1.0f64).powi(k as i32) / fact, epsilon = 1e-14);
        }
    }

    #[test]
    fn series_tanh_known_coefficients() {
        // tanh x = x - x^3/3 + 2x^5/15 - 17x^7/315 + ...
        let t = Series1::tanh(9);
        assert_relative_eq!(t.c[1], 1.0, epsilon = 1e-15);
        assert_relative_eq!(t.c[3], -1.0 / 3.0, epsilon = 1e-15);
        assert_relative_eq!(t.c[5], 2.0 / 15.0, epsilon = 1e-15);
        assert_relative_eq!(t.c[7], -17.0 / 315.0, epsilon = 1e-15);
    }

    #[test]
    fn series_recip() {
        // 1/(1 + x) = 1 - x + x^2 - ...
        let mut u = Series1::zeros(6);
        u.c[0] = 1.0;
        u.c[1] = 1.0;
        let r = u.recip(6);
        for k in 0..=6 {
            assert_relative_eq!(r.c[k], (-1.0f64).powi(k as i32), epsilon = 1e-14);
        }
    }

    #[test]
    fn polyc_inv_linear() {
        let a = C64::new(2.0, -1.0);
        let b = C64::new(0.0, 1.0);
        let p = PolyC::inv_linear(a, b, 8);
        let d = C64::new(0.3, 0.1);
        let approx_val = p.eval(d);
        let exact = 1.0 / (a + b * d);
        assert!((approx_val - exact).norm() < 1e-6);
    }
}
