//! Outward-rounded interval arithmetic on `f64`.
//!
//! Stable Rust has no control over the FPU rounding mode, so every
//! operation rounds to nearest and then widens its result by
//! [`WIDEN_ULPS`] units in the last place on each side. Round-to-nearest
//! is within half an ulp for `+ - * /` and `sqrt`, so the widened result
//! always contains the exact one.

use std::ops::{Add, Mul, Neg, Sub};

pub const WIDEN_ULPS: u32 = 4;

fn down(mut v: f64) -> f64 {
    for _ in 0..WIDEN_ULPS {
        v = v.next_down();
    }
    v
}

fn up(mut v: f64) -> f64 {
    for _ in 0..WIDEN_ULPS {
        v = v.next_up();
    }
    v
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        Self { lo, hi }
    }

    /// Degenerate interval holding an exactly representable value.
    pub fn point(v: f64) -> Self {
        Self { lo: v, hi: v }
    }

    fn rounded(lo: f64, hi: f64) -> Self {
        Self {
            lo: down(lo),
            hi: up(hi),
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * self.lo + 0.5 * self.hi
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn hull(&self, other: &Self) -> Self {
        Self {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Self { lo, hi })
    }

    /// `x^2`, tight when the interval straddles zero.
    pub fn sqr(&self) -> Self {
        let a = self.lo * self.lo;
        let b = self.hi * self.hi;
        if self.lo >= 0.0 {
            Self::rounded(a, b)
        } else if self.hi <= 0.0 {
            Self::rounded(b, a)
        } else {
            Self {
                lo: 0.0,
                hi: up(a.max(b)),
            }
        }
    }

    /// Square root of the nonnegative part; `None` when the interval lies
    /// entirely below zero.
    pub fn sqrt(&self) -> Option<Self> {
        if self.hi < 0.0 {
            return None;
        }
        let lo = if self.lo <= 0.0 {
            0.0
        } else {
            down(self.lo.sqrt()).max(0.0)
        };
        Some(Self {
            lo,
            hi: up(self.hi.sqrt()),
        })
    }

    /// `1 / x`; `None` when zero is inside the interval.
    pub fn recip(&self) -> Option<Self> {
        if self.lo <= 0.0 && self.hi >= 0.0 {
            return None;
        }
        Some(Self::rounded(1.0 / self.hi, 1.0 / self.lo))
    }

    pub fn scale(&self, c: f64) -> Self {
        if c >= 0.0 {
            Self::rounded(self.lo * c, self.hi * c)
        } else {
            Self::rounded(self.hi * c, self.lo * c)
        }
    }

    pub fn max_with(&self, v: f64) -> Self {
        Self {
            lo: self.lo.max(v),
            hi: self.hi.max(v),
        }
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Self) -> Self {
        Self::rounded(self.lo + rhs.lo, self.hi + rhs.hi)
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Self) -> Self {
        Self::rounded(self.lo - rhs.hi, self.hi - rhs.lo)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Self {
        Self {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Self) -> Self {
        let p = [
            self.lo * rhs.lo,
            self.lo * rhs.hi,
            self.hi * rhs.lo,
            self.hi * rhs.hi,
        ];
        let lo = p.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Self::rounded(lo, hi)
    }
}

/// Axis-aligned box in `(x, y, z)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IBox {
    pub x: Interval,
    pub y: Interval,
    pub z: Interval,
}

impl IBox {
    pub fn point(p: [f64; 3]) -> Self {
        Self {
            x: Interval::point(p[0]),
            y: Interval::point(p[1]),
            z: Interval::point(p[2]),
        }
    }

    pub fn dims(&self) -> [Interval; 3] {
        [self.x, self.y, self.z]
    }

    pub fn mid(&self) -> [f64; 3] {
        [self.x.mid(), self.y.mid(), self.z.mid()]
    }

    pub fn lower_corner(&self) -> [f64; 3] {
        [self.x.lo, self.y.lo, self.z.lo]
    }

    pub fn max_width(&self) -> f64 {
        self.dims().iter().map(Interval::width).fold(0.0, f64::max)
    }

    /// Halves the widest dimension.
    pub fn bisect(&self) -> (Self, Self) {
        let dims = self.dims();
        let k = (0..3)
            .max_by(|&a, &b| dims[a].width().total_cmp(&dims[b].width()))
            .unwrap();
        let m = dims[k].mid();
        let mut left = dims;
        let mut right = dims;
        left[k].hi = m;
        right[k].lo = m;
        let make = |d: [Interval; 3]| Self {
            x: d[0],
            y: d[1],
            z: d[2],
        };
        (make(left), make(right))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn interval() -> impl Strategy<Value = Interval> {
        (-10.0..10.0f64, 0.0..5.0f64).prop_map(|(lo, w)| Interval::new(lo, lo + w))
    }

    fn sample(i: &Interval, s: f64) -> f64 {
        i.lo + s * (i.hi - i.lo)
    }

    #[test]
    fn sqrt_and_recip_edge_cases() {
        assert_eq!(Interval::new(-2.0, -1.0).sqrt(), None);
        let s = Interval::new(-1.0, 4.0).sqrt().unwrap();
        assert_eq!(s.lo, 0.0);
        assert!(s.contains(2.0));
        assert_eq!(Interval::new(-1.0, 1.0).recip(), None);
        assert!(Interval::new(2.0, 4.0).recip().unwrap().contains(0.25));
    }

    #[test]
    fn third_is_enclosed() {
        let third = Interval::point(1.0).scale(1.0 / 3.0);
        assert!(third.lo < 1.0 / 3.0 && third.hi > 1.0 / 3.0);
        let r = Interval::point(3.0).recip().unwrap();
        assert!(r.contains(1.0 / 3.0));
    }

    #[test]
    fn bisect_splits_widest() {
        let b = IBox {
            x: Interval::new(0.0, 1.0),
            y: Interval::new(0.0, 4.0),
            z: Interval::new(0.0, 2.0),
        };
        let (l, r) = b.bisect();
        assert_eq!(l.y, Interval::new(0.0, 2.0));
        assert_eq!(r.y, Interval::new(2.0, 4.0));
        assert_eq!(l.x, b.x);
    }

    proptest! {
        #[test]
        fn operations_enclose_samples(a in interval(), b in interval(), s in 0.0..1.0f64, t in 0.0..1.0f64) {
            let u = sample(&a, s);
            let v = sample(&b, t);
            prop_assert!((a + b).contains(u + v));
            prop_assert!((a - b).contains(u - v));
            prop_assert!((a * b).contains(u * v));
            prop_assert!(a.sqr().contains(u * u));
            prop_assert!((-a).contains(-u));
            prop_assert!(a.scale(-2.5).contains(-2.5 * u));
            if u >= 0.0 {
                prop_assert!(a.sqrt().unwrap().contains(u.sqrt()));
            }
            if let Some(r) = b.recip() {
                prop_assert!(r.contains(1.0 / v));
            }
        }
    }
}
