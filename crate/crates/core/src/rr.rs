//! Riemann–Roch spaces `L(mP)` for one-point divisors at a Weierstrass point.
//!
//! Pole-order bookkeeping gives the basis in closed form. At infinity `x` has
//! a pole of order 2 and `y` one of order `p`, so `L(m·∞)` is spanned by
//! `x^i` (`2i <= m`) and `x^j y` (`2j + p <= m`). At a finite Weierstrass
//! point `(x0, 0)` the uniformizer is `y`, `x - x0` vanishes to order 2, and
//! `y / (x - x0)^j` is regular at infinity once `j >= (p + 1) / 2`, giving
//! `(x - x0)^-i` (`2i <= m`) and `y (x - x0)^-j` (`2j - 1 <= m`).

use std::fmt;

use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::curve::{Curve, CurvePoint};
use crate::error::{Error, Result};
use crate::gf::{FieldElement, Poly};

/// The divisor `m·base` with `base` a Weierstrass point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OnePointDivisor {
    base: CurvePoint,
    m: u32,
}

impl OnePointDivisor {
    pub fn new(curve: &Curve, base: CurvePoint, m: u32) -> Result<Self> {
        if !curve.is_weierstrass(&base) {
            return Err(Error::UnsupportedBasePoint(base.to_string()));
        }
        Ok(Self { base, m })
    }

    pub fn base(&self) -> CurvePoint {
        self.base
    }

    pub fn multiplicity(&self) -> u32 {
        self.m
    }

    pub fn degree(&self) -> u32 {
        self.m
    }
}

/// `(A(x) + B(x)·y) / (x - x0)^c`; `x0` is `None` (and `c = 0`) when the
/// pole sits at infinity.
#[derive(Clone, PartialEq, Eq)]
pub struct RrFunction {
    a: Poly,
    b: Poly,
    c: u32,
    x0: Option<FieldElement>,
    pole_order: u32,
}

impl RrFunction {
    pub fn a(&self) -> &Poly {
        &self.a
    }

    pub fn b(&self) -> &Poly {
        &self.b
    }

    pub fn denominator_power(&self) -> u32 {
        self.c
    }

    pub fn center(&self) -> Option<FieldElement> {
        self.x0
    }

    /// Order of the pole at the base point.
    pub fn pole_order(&self) -> u32 {
        self.pole_order
    }

    pub fn eval(&self, point: &CurvePoint) -> Result<FieldElement> {
        let CurvePoint::Finite { x, y } = *point else {
            return Err(Error::EvaluationAtPole(point.to_string()));
        };
        let numerator = self.a.eval(x) + self.b.eval(x) * y;
        match self.x0 {
            None => Ok(numerator),
            Some(x0) => {
                let shift = x - x0;
                if shift.is_zero() {
                    return Err(Error::EvaluationAtPole(point.to_string()));
                }
                Ok(numerator / shift.pow(self.c as u64))
            }
        }
    }
}

impl fmt::Display for RrFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})*y", self.a, self.b)?;
        if let Some(x0) = self.x0 {
            write!(f, " over (x - {x0})^{}", self.c)?;
        }
        Ok(())
    }
}

impl fmt::Debug for RrFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for RrFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(5))?;
        map.serialize_entry("A", self.a.coeffs())?;
        map.serialize_entry("B", self.b.coeffs())?;
        map.serialize_entry("c", &self.c)?;
        map.serialize_entry("x0", &self.x0)?;
        map.serialize_entry("pole_order", &self.pole_order)?;
        map.end()
    }
}

/// Basis of `L(D)` sorted by strictly increasing pole order.
pub fn rr_basis(curve: &Curve, divisor: &OnePointDivisor) -> Result<Vec<RrFunction>> {
    if !curve.is_weierstrass(&divisor.base) {
        return Err(Error::UnsupportedBasePoint(divisor.base.to_string()));
    }
    let f = curve.field();
    let m = divisor.m;
    let p = curve.p();
    let mut basis = Vec::new();
    match divisor.base {
        CurvePoint::Infinity => {
            for i in (0..).take_while(|i| 2 * i <= m) {
                basis.push(RrFunction {
                    a: Poly::monomial(f.one(), i as usize),
                    b: Poly::zero(f),
                    c: 0,
                    x0: None,
                    pole_order: 2 * i,
                });
            }
            for j in (0..).take_while(|j| 2 * j + p <= m) {
                basis.push(RrFunction {
                    a: Poly::zero(f),
                    b: Poly::monomial(f.one(), j as usize),
                    c: 0,
                    x0: None,
                    pole_order: 2 * j + p,
                });
            }
        }
        CurvePoint::Finite { x: x0, .. } => {
            for i in (0..).take_while(|i| 2 * i <= m) {
                basis.push(RrFunction {
                    a: Poly::one(f),
                    b: Poly::zero(f),
                    c: i,
                    x0: Some(x0),
                    pole_order: 2 * i,
                });
            }
            for j in (curve.weight_y()..).take_while(|j| 2 * j - 1 <= m) {
                basis.push(RrFunction {
                    a: Poly::zero(f),
                    b: Poly::one(f),
                    c: j,
                    x0: Some(x0),
                    pole_order: 2 * j - 1,
                });
            }
        }
    }
    basis.sort_by_key(|g| g.pole_order);
    Ok(basis)
}

/// `dim L(D)`; equals `m - g + 1` whenever `m > 2g - 2`.
pub fn rr_dim(curve: &Curve, divisor: &OnePointDivisor) -> Result<usize> {
    let dim = rr_basis(curve, divisor)?.len();
    let (m, g) = (divisor.m as i64, curve.genus() as i64);
    if m > 2 * g - 2 {
        assert_eq!(dim as i64, m - g + 1, "Riemann–Roch count violated");
    }
    Ok(dim)
}
