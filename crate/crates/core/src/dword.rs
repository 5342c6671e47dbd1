//! Double-word arithmetic: a value carried as the unevaluated sum `hi + lo`,
//! roughly doubling the working precision. Products use fused multiply-add.

use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dw<T> {
    pub hi: T,
    pub lo: T,
}

impl<T: Real> Dw<T> {
    pub fn new(v: T) -> Self {
        Self { hi: v, lo: T::zero() }
    }

    // requires |a| >= |b| or a = 0
    fn fast_two_sum(a: T, b: T) -> Self {
        let s = a + b;
        Self { hi: s, lo: b - (s - a) }
    }

    pub fn two_sum(a: T, b: T) -> Self {
        let s = a + b;
        let bb = s - a;
        Self {
            hi: s,
            lo: (a - (s - bb)) + (b - bb),
        }
    }

    pub fn two_prod(a: T, b: T) -> Self {
        let p = a * b;
        Self { hi: p, lo: a.mul_add(b, -p) }
    }

    pub fn add(self, o: Self) -> Self {
        let s = Self::two_sum(self.hi, o.hi);
        let t = Self::two_sum(self.lo, o.lo);
        let v = Self::fast_two_sum(s.hi, s.lo + t.hi);
        Self::fast_two_sum(v.hi, t.lo + v.lo)
    }

    pub fn neg(self) -> Self {
        Self { hi: -self.hi, lo: -self.lo }
    }

    pub fn mul(self, o: Self) -> Self {
        let p = Self::two_prod(self.hi, o.hi);
        Self::fast_two_sum(p.hi, p.lo + (self.hi * o.lo + self.lo * o.hi))
    }

    pub fn div(self, o: Self) -> Self {
        let q1 = self.hi / o.hi;
        let r = self.add(o.mul(Self::new(q1)).neg());
        let q2 = r.hi / o.hi;
        let r = r.add(o.mul(Self::new(q2)).neg());
        let q3 = r.hi / o.hi;
        Self::fast_two_sum(q1, q2).add(Self::new(q3))
    }

    pub fn value(self) -> T {
        self.hi + self.lo
    }
}
