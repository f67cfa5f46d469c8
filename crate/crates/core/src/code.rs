//! Linear codes over GF(q), AG evaluation codes, and parameter bounds.

use std::collections::HashSet;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::curve::{Curve, CurvePoint};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldCtx, FieldElement};
use crate::perm::Permutation;
use crate::rr::{rr_basis, OnePointDivisor};

/// Default bound on projective messages enumerated by [`LinearCode::min_distance_exact`].
pub const DEFAULT_MIN_DISTANCE_CAP: u64 = 10_000_000;

/// Reduced row echelon form; zero rows are dropped. Returns the rows and the
/// pivot column of each.
pub fn rref(rows: &[Vec<FieldElement>]) -> (Vec<Vec<FieldElement>>, Vec<usize>) {
    let mut m: Vec<Vec<FieldElement>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let inv = m[r][col].inv().expect("pivot is nonzero");
        for v in m[r].iter_mut() {
            *v = *v * inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col];
            for (v, &pv) in row.iter_mut().zip(&pivot_row).skip(col) {
                *v = *v - factor * pv;
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

/// Generator matrix together with its canonical reduced form.
#[derive(Clone, Debug)]
pub struct GenMatrix {
    field: Field,
    n: usize,
    rows: Vec<Vec<FieldElement>>,
    rref: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
}

impl GenMatrix {
    pub fn new(field: Field, n: usize, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        for row in &rows {
            if row.len() != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            if let Some(bad) = row.iter().find(|v| !std::ptr::eq(v.field(), field)) {
                return Err(Error::ContextMismatch {
                    left: field.order(),
                    right: bad.field().order(),
                });
            }
        }
        let (rref, pivots) = rref(&rows);
        Ok(Self {
            field,
            n,
            rows,
            rref,
            pivots,
        })
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    pub fn rref(&self) -> &[Vec<FieldElement>] {
        &self.rref
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rank(&self) -> usize {
        self.rref.len()
    }
}

/// A linear code, identified with the row space of its generator matrix.
#[derive(Clone, Debug)]
pub struct LinearCode {
    gen: GenMatrix,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.gen.field, other.gen.field)
            && self.gen.n == other.gen.n
            && self.gen.rref == other.gen.rref
    }
}

impl Eq for LinearCode {}

impl LinearCode {
    pub fn from_rows(field: Field, n: usize, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        Ok(Self {
            gen: GenMatrix::new(field, n, rows)?,
        })
    }

    pub fn field(&self) -> Field {
        self.gen.field
    }

    pub fn length(&self) -> usize {
        self.gen.n
    }

    pub fn dimension(&self) -> usize {
        self.gen.rank()
    }

    pub fn generator(&self) -> &GenMatrix {
        &self.gen
    }

    /// The rows of the reduced echelon form.
    pub fn rref(&self) -> &[Vec<FieldElement>] {
        &self.gen.rref
    }

    /// Moves column `i` to position `π(i)`.
    pub fn permute_coords(&self, perm: &Permutation) -> Result<LinearCode> {
        if perm.degree() != self.gen.n {
            return Err(Error::SizeMismatch {
                expected: self.gen.n,
                found: perm.degree(),
            });
        }
        let moved = self
            .gen
            .rref
            .iter()
            .map(|row| {
                let mut out = row.clone();
                for (i, &v) in row.iter().enumerate() {
                    out[perm.images()[i]] = v;
                }
                out
            })
            .collect();
        LinearCode::from_rows(self.gen.field, self.gen.n, moved)
    }

    /// Linear combination of the reduced rows.
    pub fn encode(&self, message: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if message.len() != self.dimension() {
            return Err(Error::SizeMismatch {
                expected: self.dimension(),
                found: message.len(),
            });
        }
        let mut word = vec![self.gen.field.zero(); self.gen.n];
        for (&m, row) in message.iter().zip(&self.gen.rref) {
            if m.is_zero() {
                continue;
            }
            for (w, &v) in word.iter_mut().zip(row) {
                *w = *w + m * v;
            }
        }
        Ok(word)
    }

    pub fn contains(&self, word: &[FieldElement]) -> bool {
        if word.len() != self.gen.n {
            return false;
        }
        // In RREF the message is read off the pivot columns.
        let message: Vec<FieldElement> = self.gen.pivots.iter().map(|&c| word[c]).collect();
        self.encode(&message).is_ok_and(|w| w == word)
    }

    /// Number of projective messages, `(q^k - 1)/(q - 1)`, if it fits in `u64`.
    pub fn projective_message_count(&self) -> Option<u64> {
        let q = self.gen.field.order();
        let qk = q.checked_pow(self.dimension() as u32)?;
        Some((qk - 1) / (q - 1))
    }

    /// Minimum Hamming weight of a nonzero codeword, enumerating one
    /// representative per line (first nonzero message symbol equal to one).
    pub fn min_distance_exact(&self, cap: u64) -> Result<usize> {
        let k = self.dimension();
        if k == 0 {
            return Err(Error::InvalidParameter(
                "zero code has no minimum distance".into(),
            ));
        }
        let count = self.projective_message_count();
        if count.is_none_or(|c| c > cap) {
            return Err(Error::CapExceeded {
                what: "minimum-distance enumeration",
                cap,
            });
        }
        let field = self.gen.field;
        let q = field.order();
        let n = self.gen.n;
        let mut best = n;
        for lead in 0..k {
            let free = k - lead - 1;
            let tails = q.pow(free as u32);
            // start from the leading row, add every combination of the later rows
            let base = &self.gen.rref[lead];
            for idx in 0..tails {
                let mut word = base.clone();
                let mut rest = idx;
                for row in &self.gen.rref[lead + 1..] {
                    let coef = field.element_at(rest % q);
                    rest /= q;
                    if coef.is_zero() {
                        continue;
                    }
                    for (w, &v) in word.iter_mut().zip(row) {
                        *w = *w + coef * v;
                    }
                }
                let weight = word.iter().filter(|v| !v.is_zero()).count();
                best = best.min(weight);
            }
        }
        Ok(best)
    }

    /// The generator-matrix text format: a `q n k` header, then `k` rows of
    /// `n` whitespace-separated field elements.
    pub fn to_matrix_text(&self) -> String {
        let rows = self.export_rows();
        let mut out = format!("{} {} {}\n", self.gen.field.order(), self.gen.n, rows.len());
        for row in rows {
            let tokens: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{}", tokens.join(" "));
        }
        out
    }

    /// Generator rows as built when they are independent, else the reduced rows.
    fn export_rows(&self) -> &[Vec<FieldElement>] {
        if self.gen.rows.len() == self.gen.rank() {
            &self.gen.rows
        } else {
            &self.gen.rref
        }
    }

    pub fn parse_matrix_text(text: &str) -> Result<LinearCode> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix file".into()))?;
        let nums: Vec<u64> = header
            .split_whitespace()
            .map(|t| t.parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse(format!("bad header `{header}`")))?;
        let [q, n, k] = nums[..] else {
            return Err(Error::Parse(format!("header `{header}` is not `q n k`")));
        };
        let field = field_of_order(q)?;
        let rows = lines
            .map(|line| {
                line.split_whitespace()
                    .map(|tok| field.parse_element(tok))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if rows.len() as u64 != k {
            return Err(Error::Parse(format!(
                "header says {k} rows, found {}",
                rows.len()
            )));
        }
        LinearCode::from_rows(field, n as usize, rows)
    }

    pub fn to_matrix_json(&self) -> MatrixJson<'_> {
        MatrixJson {
            q: self.gen.field.order(),
            n: self.gen.n,
            k: self.export_rows().len(),
            rows: self.export_rows(),
        }
    }
}

/// JSON form of the generator-matrix file.
#[derive(Serialize)]
pub struct MatrixJson<'a> {
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub rows: &'a [Vec<FieldElement>],
}

/// The field of order `q` (a prime power).
pub fn field_of_order(q: u64) -> Result<Field> {
    let p = (2..=q)
        .find(|d| q.is_multiple_of(*d))
        .ok_or_else(|| Error::InvalidField(format!("no field of order {q}")))?;
    let mut k = 0;
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    if rest != 1 {
        return Err(Error::InvalidField(format!("{q} is not a prime power")));
    }
    FieldCtx::get(p as u32, k)
}

/// `C(D, E)`: the rows are the basis of `L(D)` evaluated along `points`.
pub fn build_ag_code(
    curve: &Curve,
    divisor: &OnePointDivisor,
    points: &[CurvePoint],
) -> Result<LinearCode> {
    if points.is_empty() {
        return Err(Error::InvalidEvaluationSet("no evaluation points".into()));
    }
    let mut seen = HashSet::new();
    for p in points {
        if p.is_infinity() {
            return Err(Error::InvalidEvaluationSet(
                "evaluation points must be finite".into(),
            ));
        }
        if !curve.contains(p) {
            return Err(Error::NotOnCurve(p.to_string()));
        }
        if *p == divisor.base() {
            return Err(Error::InvalidEvaluationSet(format!(
                "{p} lies in the support of D"
            )));
        }
        if !seen.insert(*p) {
            return Err(Error::InvalidEvaluationSet(format!("{p} repeated")));
        }
    }
    let rows = rr_basis(curve, divisor)?
        .iter()
        .map(|f| points.iter().map(|p| f.eval(p)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    LinearCode::from_rows(curve.field(), points.len(), rows)
}

/// Designed distance `deg E - deg D`.
pub fn d_designed(deg_e: u64, deg_d: u64) -> Result<u64> {
    if deg_e <= deg_d {
        return Err(Error::InvalidParameter(format!(
            "designed distance needs deg E > deg D, got {deg_e} <= {deg_d}"
        )));
    }
    Ok(deg_e - deg_d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub d_exact: Option<usize>,
    pub d_lower: Option<u64>,
}

impl CodeParams {
    pub fn new(n: usize, k: usize, d_exact: Option<usize>, d_lower: Option<u64>) -> Result<Self> {
        if let Some(d) = d_exact {
            if k + d > n + 1 {
                return Err(Error::InvalidParameter(format!(
                    "[{n},{k},{d}] violates the Singleton bound"
                )));
            }
            if d_lower.is_some_and(|lo| lo > d as u64) {
                return Err(Error::InvalidParameter(format!(
                    "designed distance {} exceeds exact distance {d}",
                    d_lower.unwrap_or_default()
                )));
            }
        }
        Ok(Self {
            n,
            k,
            d_exact,
            d_lower,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GvComparison {
    /// `Σ_{i=0}^{d-2} C(n-1, i) (q-1)^i`.
    pub sum: BigUint,
    /// `q^(n-k)`.
    pub bound: BigUint,
    /// `sum >= bound`: the existence guarantee fails, so a code with these
    /// parameters does better than the guarantee.
    pub beats_gv: bool,
}

impl Serialize for GvComparison {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(3))?;
        map.serialize_entry("sum", &self.sum.to_string())?;
        map.serialize_entry("bound", &self.bound.to_string())?;
        map.serialize_entry("beats_gv", &self.beats_gv)?;
        map.end()
    }
}

pub fn gv_check(n: u64, k: u64, d: u64, q: u64) -> Result<GvComparison> {
    if !(1..=n).contains(&d) || !(1..=n).contains(&k) || q < 2 {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= d, k <= n and q >= 2, got n={n} k={k} d={d} q={q}"
        )));
    }
    let q_minus_1 = BigUint::from(q - 1);
    let mut sum = BigUint::zero();
    let mut binom = BigUint::one();
    let mut power = BigUint::one();
    // empty when d = 1
    for i in 0..d.saturating_sub(1) {
        if i > 0 {
            binom = binom * BigUint::from(n - i) / BigUint::from(i);
            power *= &q_minus_1;
        }
        sum += &binom * &power;
    }
    let bound = BigUint::from(q).pow((n - k) as u32);
    let beats_gv = sum >= bound;
    Ok(GvComparison {
        sum,
        bound,
        beats_gv,
    })
}
