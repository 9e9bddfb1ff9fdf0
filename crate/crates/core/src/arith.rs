//! Scalar arithmetic contract shared by every kernel.
//!
//! Kernels are written once against [`Arith`]. Running them with
//! [`Counting`] evaluates in `f64` and tallies a [`FlopLedger`]; running them
//! with the network tracer records a [`crate::network::LinearNetwork`].
//! Only `add`, `sub` and `mul` cost anything. A kernel that wants to
//! multiply by `±1` must use `neg` or nothing, never `mul`.

use num_complex::Complex64;

use crate::flops::FlopLedger;

pub trait Arith {
    type Value: Copy;

    fn add(&mut self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn sub(&mut self, a: Self::Value, b: Self::Value) -> Self::Value;
    /// Multiplication by a precomputed constant.
    fn mul(&mut self, c: f64, a: Self::Value) -> Self::Value;
    fn neg(&mut self, a: Self::Value) -> Self::Value;
    /// A literal. Only zero keeps a kernel linear.
    fn constant(&mut self, c: f64) -> Self::Value;
}

/// `f64` evaluation that charges every add/sub and mul to a ledger.
pub struct Counting<'a> {
    ledger: &'a mut FlopLedger,
}

impl<'a> Counting<'a> {
    pub fn new(ledger: &'a mut FlopLedger) -> Self {
        Self { ledger }
    }
}

impl Arith for Counting<'_> {
    type Value = f64;

    #[inline]
    fn add(&mut self, a: f64, b: f64) -> f64 {
        self.ledger.adds += 1;
        a + b
    }

    #[inline]
    fn sub(&mut self, a: f64, b: f64) -> f64 {
        self.ledger.adds += 1;
        a - b
    }

    #[inline]
    fn mul(&mut self, c: f64, a: f64) -> f64 {
        self.ledger.mults += 1;
        c * a
    }

    #[inline]
    fn neg(&mut self, a: f64) -> f64 {
        -a
    }

    #[inline]
    fn constant(&mut self, c: f64) -> f64 {
        c
    }
}

/// A complex value split into two scalar lanes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cx<V> {
    pub re: V,
    pub im: V,
}

impl<V> Cx<V> {
    #[inline]
    pub const fn new(re: V, im: V) -> Self {
        Self { re, im }
    }
}

impl From<Complex64> for Cx<f64> {
    fn from(z: Complex64) -> Self {
        Cx::new(z.re, z.im)
    }
}

impl From<Cx<f64>> for Complex64 {
    fn from(z: Cx<f64>) -> Self {
        Complex64::new(z.re, z.im)
    }
}

#[inline]
pub(crate) fn cadd<A: Arith>(a: &mut A, x: Cx<A::Value>, y: Cx<A::Value>) -> Cx<A::Value> {
    Cx::new(a.add(x.re, y.re), a.add(x.im, y.im))
}

#[inline]
pub(crate) fn csub<A: Arith>(a: &mut A, x: Cx<A::Value>, y: Cx<A::Value>) -> Cx<A::Value> {
    Cx::new(a.sub(x.re, y.re), a.sub(x.im, y.im))
}

/// Real constant times complex value: 2 mults.
#[inline]
pub(crate) fn cscale<A: Arith>(a: &mut A, c: f64, z: Cx<A::Value>) -> Cx<A::Value> {
    Cx::new(a.mul(c, z.re), a.mul(c, z.im))
}

/// General complex constant times complex value: 4 mults + 2 adds.
#[inline]
pub(crate) fn cmul<A: Arith>(a: &mut A, w: Complex64, z: Cx<A::Value>) -> Cx<A::Value> {
    let rr = a.mul(w.re, z.re);
    let ii = a.mul(w.im, z.im);
    let ri = a.mul(w.re, z.im);
    let ir = a.mul(w.im, z.re);
    Cx::new(a.sub(rr, ii), a.add(ri, ir))
}

/// `conj(w) * z`: 4 mults + 2 adds.
#[inline]
pub(crate) fn cmul_conj<A: Arith>(a: &mut A, w: Complex64, z: Cx<A::Value>) -> Cx<A::Value> {
    let rr = a.mul(w.re, z.re);
    let ii = a.mul(w.im, z.im);
    let ri = a.mul(w.re, z.im);
    let ir = a.mul(w.im, z.re);
    Cx::new(a.add(rr, ii), a.sub(ri, ir))
}

/// `(1 - i) z`: 2 adds.
#[inline]
pub(crate) fn mul_one_minus_i<A: Arith>(a: &mut A, z: Cx<A::Value>) -> Cx<A::Value> {
    Cx::new(a.add(z.re, z.im), a.sub(z.im, z.re))
}

/// `(1 + i) z`: 2 adds.
#[inline]
pub(crate) fn mul_one_plus_i<A: Arith>(a: &mut A, z: Cx<A::Value>) -> Cx<A::Value> {
    Cx::new(a.sub(z.re, z.im), a.add(z.im, z.re))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counting_charges_only_adds_and_mults() {
        let mut ledger = FlopLedger::default();
        let mut a = Counting::new(&mut ledger);
        let x = a.add(1.0, 2.0);
        let y = a.neg(x);
        let z = a.mul(0.5, y);
        let w = a.sub(z, 1.0);
        assert_eq!(w, -2.5);
        assert_eq!(ledger, FlopLedger::new(2, 1));
    }

    #[test]
    fn complex_helper_costs() {
        let mut ledger = FlopLedger::default();
        let mut a = Counting::new(&mut ledger);
        let w = Complex64::new(0.3, -0.7);
        let z = Cx::new(1.5, 2.0);
        let p = cmul(&mut a, w, z);
        let q = cmul_conj(&mut a, w, z);
        let want_p = w * Complex64::new(1.5, 2.0);
        let want_q = w.conj() * Complex64::new(1.5, 2.0);
        assert!((Complex64::from(p) - want_p).norm() < 1e-15);
        assert!((Complex64::from(q) - want_q).norm() < 1e-15);
        assert_eq!(ledger, FlopLedger::new(4, 8));

        let mut ledger = FlopLedger::default();
        let mut a = Counting::new(&mut ledger);
        let r = mul_one_minus_i(&mut a, z);
        let s = mul_one_plus_i(&mut a, z);
        assert_eq!(
            Complex64::from(r),
            Complex64::new(1.0, -1.0) * Complex64::new(1.5, 2.0)
        );
        assert_eq!(
            Complex64::from(s),
            Complex64::new(1.0, 1.0) * Complex64::new(1.5, 2.0)
        );
        assert_eq!(ledger, FlopLedger::new(4, 0));
    }
}
