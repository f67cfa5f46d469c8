//! The curves `y^2 = x^p - x` (`p ≡ 3 mod 4`, `p > 3`) in the weighted
//! projective plane with weights `(1, h, 1)`, `h = (p + 1) / 2`, and their
//! automorphisms defined over the prime field.
//!
//! An automorphism is a pair `(M, e)` with `M = (a b; c d)` over GF(p) and
//! `e` in the curve's field, acting by
//! `[X : Y : Z] ↦ [aX + bZ : eY : cX + dZ]`. Scaling `(M, e) ~ (λM, λ^h e)`
//! gives the same map; elements are stored with the first nonzero entry of
//! `M` (row-major) equal to one.

use std::collections::HashMap;
use std::fmt;

use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::error::{Error, Result};
use crate::gf::{rational_identity_check, Field, FieldCtx, FieldElement, Poly};
use crate::group::{self, GroupElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Curve {
    p: u32,
    field: Field,
}

impl Curve {
    /// The curve over GF(p^ext).
    pub fn new(p: u32, ext: usize) -> Result<Self> {
        if p <= 3 || p % 4 != 3 {
            return Err(Error::InvalidCurve(format!(
                "need a prime p > 3 with p ≡ 3 mod 4, got {p}"
            )));
        }
        let field = FieldCtx::get(p, ext)
            .map_err(|e| Error::InvalidCurve(format!("bad field for p = {p}: {e}")))?;
        Ok(Self { p, field })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Weight of `y` in the weighted projective model.
    pub fn weight_y(&self) -> u32 {
        self.p.div_ceil(2)
    }

    pub fn genus(&self) -> u32 {
        (self.p - 1) / 2
    }

    /// `x^p - x` as a polynomial.
    pub fn rhs_poly(&self) -> Poly {
        &Poly::monomial(self.field.one(), self.p as usize) - &Poly::x(self.field)
    }

    fn rhs(&self, x: FieldElement) -> FieldElement {
        x.pow(self.p as u64) - x
    }

    pub fn contains(&self, point: &CurvePoint) -> bool {
        match point {
            CurvePoint::Infinity => true,
            CurvePoint::Finite { x, y } => {
                std::ptr::eq(x.field(), self.field)
                    && std::ptr::eq(y.field(), self.field)
                    && *y * *y == self.rhs(*x)
            }
        }
    }

    /// A finite point, checked to lie on the curve.
    pub fn point(&self, x: FieldElement, y: FieldElement) -> Result<CurvePoint> {
        let pt = CurvePoint::Finite { x, y };
        if self.contains(&pt) {
            Ok(pt)
        } else {
            Err(Error::NotOnCurve(pt.to_string()))
        }
    }

    /// All rational points: infinity first, then finite points by `(x, y)`.
    pub fn points(&self) -> Vec<CurvePoint> {
        let mut roots: HashMap<FieldElement, Vec<FieldElement>> = HashMap::new();
        for y in self.field.elements() {
            roots.entry(y * y).or_default().push(y);
        }
        let mut pts = vec![CurvePoint::Infinity];
        for x in self.field.elements() {
            if let Some(ys) = roots.get(&self.rhs(x)) {
                pts.extend(ys.iter().map(|&y| CurvePoint::Finite { x, y }));
            }
        }
        pts
    }

    /// Fixed points of `y ↦ -y`: infinity and `(x0, 0)` for `x0` in GF(p).
    pub fn weierstrass_points(&self) -> Vec<CurvePoint> {
        std::iter::once(CurvePoint::Infinity)
            .chain((0..self.p as u64).map(|x0| CurvePoint::Finite {
                x: self.field.element(x0),
                y: self.field.zero(),
            }))
            .collect()
    }

    pub fn is_weierstrass(&self, point: &CurvePoint) -> bool {
        match point {
            CurvePoint::Infinity => true,
            CurvePoint::Finite { x, y } => {
                y.is_zero() && x.as_prime().is_some() && self.contains(point)
            }
        }
    }

    /// The four standard generators `γ1 .. γ4` with `γ2 = γ2(a)`:
    /// `γ1: y ↦ -y`, `γ2: (x, y) ↦ (a²x, ay)`, `γ3: x ↦ x + 1`,
    /// `γ4: (x, y) ↦ (-1/x, y/x^h)`.
    pub fn standard_generators(&self, a: FieldElement) -> Result<[AutElement; 4]> {
        if !std::ptr::eq(a.field(), self.field) {
            return Err(Error::InvalidParameter(format!(
                "γ2 parameter {a} is not in {}",
                self.field
            )));
        }
        if a.is_zero() {
            return Err(Error::InvalidParameter(
                "γ2 parameter must be nonzero".into(),
            ));
        }
        let a_sq = (a * a).as_prime().ok_or_else(|| {
            Error::InvalidParameter(format!(
                "γ2 parameter {a} has a² outside GF({}), so x ↦ a²x is not defined over it",
                self.p
            ))
        })?;
        let one = self.field.one();
        Ok([
            AutElement::new(self, [[1, 0], [0, 1]], -one)?,
            AutElement::new(self, [[a_sq as i64, 0], [0, 1]], a)?,
            AutElement::new(self, [[1, 1], [0, 1]], one)?,
            AutElement::new(self, [[0, -1], [1, 0]], one)?,
        ])
    }

    /// Default `γ2` parameter: the least element of order `p - 1` over
    /// GF(p) and of order `2(p - 1)` over larger fields, the largest order
    /// for which `a²` stays in GF(p).
    pub fn default_gamma2_parameter(&self) -> Result<FieldElement> {
        let order = if self.field.degree() == 1 {
            self.p as u64 - 1
        } else {
            2 * (self.p as u64 - 1)
        };
        self.field.element_of_order(order)
    }

    /// Every automorphism `(M, e)` with `M` over GF(p), in canonical form, sorted.
    pub fn aut_group(&self) -> Result<Vec<AutElement>> {
        let p = self.p as i64;
        let mut roots: HashMap<u32, Vec<FieldElement>> = HashMap::new();
        for e in self.field.elements() {
            if let Some(r) = (e * e).as_prime() {
                roots.entry(r).or_default().push(e);
            }
        }
        let mut out = Vec::new();
        for a in 0..p {
            for b in 0..p {
                for c in 0..p {
                    for d in 0..p {
                        let leading = [a, b, c, d].into_iter().find(|&v| v != 0);
                        if leading != Some(1) {
                            continue;
                        }
                        let det = (a * d - b * c).rem_euclid(p) as u32;
                        if det == 0 {
                            continue;
                        }
                        for &e in roots.get(&det).into_iter().flatten() {
                            out.push(AutElement::new(self, [[a, b], [c, d]], e)?);
                        }
                    }
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Closure of `gens` under composition.
    pub fn closure_from_generators(
        &self,
        gens: &[AutElement],
        cap: usize,
    ) -> Result<Vec<AutElement>> {
        group::closure(AutElement::identity(self), gens, cap)
    }

    pub fn orbit(&self, group: &[AutElement], point: &CurvePoint) -> Vec<CurvePoint> {
        group::orbit(group, point, |t, p| t.apply(p))
    }

    pub fn stabilizer(&self, group: &[AutElement], point: &CurvePoint) -> Vec<AutElement> {
        group::stabilizer(group, point, |t, p| t.apply(p))
    }

    /// Orbits of `group` on the rational points, each sorted, listed by least point.
    pub fn orbits(&self, group: &[AutElement]) -> Vec<Vec<CurvePoint>> {
        let mut remaining: Vec<CurvePoint> = self.points();
        let mut out = Vec::new();
        while let Some(first) = remaining.first().copied() {
            let orb = self.orbit(group, &first);
            remaining.retain(|p| orb.binary_search(p).is_err());
            out.push(orb);
        }
        out
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CurvePoint {
    /// `[1 : 0 : 0]`.
    Infinity,
    Finite {
        x: FieldElement,
        y: FieldElement,
    },
}

impl CurvePoint {
    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn x(&self) -> Option<FieldElement> {
        match self {
            CurvePoint::Finite { x, .. } => Some(*x),
            CurvePoint::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<FieldElement> {
        match self {
            CurvePoint::Finite { y, .. } => Some(*y),
            CurvePoint::Infinity => None,
        }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "inf"),
            CurvePoint::Finite { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

impl fmt::Debug for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for CurvePoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CurvePoint::Infinity => serializer.serialize_str("inf"),
            CurvePoint::Finite { x, y } => {
                let mut map = serializer.serialize_map(Some(2))?;
                map.serialize_entry("x", x)?;
                map.serialize_entry("y", y)?;
                map.end()
            }
        }
    }
}

/// A curve automorphism `(M, e)` in canonical form.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AutElement {
    m: [[u32; 2]; 2],
    e: FieldElement,
}

impl AutElement {
    /// Reduces, canonicalizes and validates `(M, e)` against `curve`.
    pub fn new(curve: &Curve, m: [[i64; 2]; 2], e: FieldElement) -> Result<Self> {
        if !std::ptr::eq(e.field(), curve.field) {
            return Err(Error::InvalidParameter(format!(
                "scalar {e} is not in {}",
                curve.field
            )));
        }
        let p = curve.p as i64;
        let m = m.map(|row| row.map(|v| v.rem_euclid(p) as u32));
        let t = Self::canonical(m, e)
            .ok_or_else(|| Error::InvalidParameter(format!("singular matrix {m:?}")))?;
        if curve.field.element(t.det() as u64) != t.e * t.e {
            return Err(Error::InvalidParameter(format!(
                "e² ≠ det M for M = {:?}, e = {}",
                t.m, t.e
            )));
        }
        if !t.preserves_curve(curve)? {
            return Err(Error::InvalidParameter(format!(
                "{t} does not preserve the curve"
            )));
        }
        Ok(t)
    }

    pub fn identity(curve: &Curve) -> Self {
        Self {
            m: [[1, 0], [0, 1]],
            e: curve.field.one(),
        }
    }

    fn p(&self) -> u64 {
        self.e.field().p() as u64
    }

    fn canonical(m: [[u32; 2]; 2], e: FieldElement) -> Option<Self> {
        let field = e.field();
        let p = field.p() as u64;
        if (m[0][0] as u64 * m[1][1] as u64 + p * p - m[0][1] as u64 * m[1][0] as u64)
            .is_multiple_of(p)
        {
            return None;
        }
        let lead = [m[0][0], m[0][1], m[1][0], m[1][1]]
            .into_iter()
            .find(|&v| v != 0)?;
        let lambda = field.element(lead as u64).inv().ok()?;
        let lam = lambda.as_prime().expect("prime subfield") as u64;
        let h = p.div_ceil(2);
        Some(Self {
            m: m.map(|row| row.map(|v| (v as u64 * lam % p) as u32)),
            e: lambda.pow(h) * e,
        })
    }

    /// Matrix entries as residues mod p.
    pub fn matrix(&self) -> [[u32; 2]; 2] {
        self.m
    }

    pub fn scalar(&self) -> FieldElement {
        self.e
    }

    pub fn det(&self) -> u32 {
        let p = self.p();
        let [[a, b], [c, d]] = self.m.map(|r| r.map(|v| v as u64));
        ((a * d + p * p - b * c) % p) as u32
    }

    /// Exact check of `ψ(x)²(x^p - x) = φ(x)^p - φ(x)` for
    /// `φ = (ax + b)/(cx + d)`, `ψ = e/(cx + d)^h`.
    pub fn preserves_curve(&self, curve: &Curve) -> Result<bool> {
        let f = curve.field;
        let [[a, b], [c, d]] = self.m.map(|r| r.map(|v| f.element(v as u64)));
        let num = Poly::new(f, vec![b, a]);
        let den = Poly::new(f, vec![d, c]);
        let p = curve.p as u64;
        let lhs_num = curve.rhs_poly().scale(self.e * self.e);
        let lhs_den = den.pow(2 * curve.weight_y() as u64);
        let rhs_num = &(&num.pow(p) * &den) - &(&num * &den.pow(p));
        let rhs_den = den.pow(p + 1);
        rational_identity_check(&lhs_num, &lhs_den, &rhs_num, &rhs_den)
    }

    /// Image of a point under `[X : Y : Z] ↦ [aX + bZ : eY : cX + dZ]`.
    pub fn apply(&self, point: &CurvePoint) -> CurvePoint {
        let f = self.e.field();
        let [[a, b], [c, d]] = self.m.map(|r| r.map(|v| f.element(v as u64)));
        match point {
            CurvePoint::Infinity => {
                if c.is_zero() {
                    CurvePoint::Infinity
                } else {
                    CurvePoint::Finite {
                        x: a / c,
                        y: f.zero(),
                    }
                }
            }
            CurvePoint::Finite { x, y } => {
                let z = c * *x + d;
                if z.is_zero() {
                    return CurvePoint::Infinity;
                }
                let z_inv = z.inv().expect("nonzero");
                let h = (f.p() as u64).div_ceil(2);
                CurvePoint::Finite {
                    x: (a * *x + b) * z_inv,
                    y: self.e * *y * z_inv.pow(h),
                }
            }
        }
    }
}

impl GroupElement for AutElement {
    fn compose(&self, other: &Self) -> Self {
        let p = self.p();
        let mut m = [[0u32; 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                let s: u64 = (0..2)
                    .map(|l| self.m[i][l] as u64 * other.m[l][j] as u64)
                    .sum();
                *slot = (s % p) as u32;
            }
        }
        Self::canonical(m, self.e * other.e).expect("product of invertible matrices")
    }

    fn inverse(&self) -> Self {
        // adj(M) = det(M) M^-1, and scaling is quotiented out.
        let p = self.p() as u32;
        let neg = |v: u32| if v == 0 { 0 } else { p - v };
        let [[a, b], [c, d]] = self.m;
        let adj = [[d, neg(b)], [neg(c), a]];
        let det = self.e.field().element(self.det() as u64);
        let h = (p as u64).div_ceil(2);
        let e = det.pow(h) * self.e.inv().expect("e² = det ≠ 0");
        Self::canonical(adj, e).expect("invertible")
    }

    fn is_identity(&self) -> bool {
        self.m == [[1, 0], [0, 1]] && self.e.is_one()
    }
}

impl fmt::Display for AutElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = self.m;
        write!(f, "M=[[{a},{b}],[{c},{d}]] e={}", self.e)
    }
}

impl fmt::Debug for AutElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for AutElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("M", &self.m)?;
        map.serialize_entry("e", &self.e)?;
        map.end()
    }
}
