//! Exact arithmetic in `Z[φ]`, `φ = (1 + √5)/2`.
//!
//! Every element is `a + bφ` with integer `a`, `b`, and `φ² = φ + 1`. Signs
//! are decided without floating point: `a + bφ = (u + v√5)/2` with
//! `u = 2a + b`, `v = b`, and comparing `u²` against `5v²` settles the mixed
//! sign cases.

use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ZPhi {
    pub a: i128,
    pub b: i128,
}

impl ZPhi {
    pub const ZERO: ZPhi = ZPhi { a: 0, b: 0 };
    pub const ONE: ZPhi = ZPhi { a: 1, b: 0 };
    pub const PHI: ZPhi = ZPhi { a: 0, b: 1 };

    pub fn int(a: i128) -> Self {
        ZPhi { a, b: 0 }
    }

    /// `φ^d = F_d φ + F_{d-1}`, or `None` on overflow.
    pub fn phi_pow(d: u32) -> Option<Self> {
        // (F_{i-1}, F_i), starting at i = 0
        let (mut prev, mut cur) = (1i128, 0i128);
        for _ in 0..d {
            let next = prev.checked_add(cur)?;
            prev = cur;
            cur = next;
        }
        Some(ZPhi { a: prev, b: cur })
    }

    pub fn checked_add(self, o: Self) -> Option<Self> {
        Some(ZPhi {
            a: self.a.checked_add(o.a)?,
            b: self.b.checked_add(o.b)?,
        })
    }

    pub fn checked_sub(self, o: Self) -> Option<Self> {
        Some(ZPhi {
            a: self.a.checked_sub(o.a)?,
            b: self.b.checked_sub(o.b)?,
        })
    }

    pub fn checked_scale(self, k: i128) -> Option<Self> {
        Some(ZPhi {
            a: self.a.checked_mul(k)?,
            b: self.b.checked_mul(k)?,
        })
    }

    /// `(a + bφ)(c + dφ) = (ac + bd) + (ad + bc + bd)φ`.
    pub fn checked_mul(self, o: Self) -> Option<Self> {
        let bd = self.b.checked_mul(o.b)?;
        Some(ZPhi {
            a: self.a.checked_mul(o.a)?.checked_add(bd)?,
            b: self
                .a
                .checked_mul(o.b)?
                .checked_add(self.b.checked_mul(o.a)?)?
                .checked_add(bd)?,
        })
    }

    /// Exact sign, or `None` if the squared comparison overflows.
    pub fn signum(self) -> Option<Ordering> {
        let u = self.a.checked_mul(2)?.checked_add(self.b)?;
        let v = self.b;
        let su = u.cmp(&0);
        let sv = v.cmp(&0);
        use Ordering::*;
        Some(match (su, sv) {
            (Equal, Equal) => Equal,
            (Greater | Equal, Greater | Equal) => Greater,
            (Less | Equal, Less | Equal) => Less,
            _ => {
                let u2 = u.checked_mul(u)?;
                let v2 = v.checked_mul(v)?.checked_mul(5)?;
                // u and v have opposite signs; the larger magnitude wins
                match u2.cmp(&v2) {
                    Greater => su,
                    Less => sv,
                    Equal => unreachable!("√5 is irrational"),
                }
            }
        })
    }

    /// Compares `self` with `o`, `None` on overflow.
    pub fn checked_cmp(self, o: Self) -> Option<Ordering> {
        self.checked_sub(o)?.signum()
    }

    /// Floating approximation, for display only.
    pub fn approx(self) -> f64 {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        self.a as f64 + self.b as f64 * phi
    }
}

impl fmt::Display for ZPhi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}φ", self.a, self.b)
    }
}
