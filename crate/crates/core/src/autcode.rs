//! Curve automorphisms acting on AG codes: the map `ρ` into coordinate
//! permutations, exhaustive permutation automorphism groups of short codes,
//! and the comparison between the two.
//!
//! `ρ(T)` sends index `i` to `j` when `T(P_i) = P_j`. The induced action on
//! codewords is `c'_i = c_{π⁻¹(i)}`, i.e. `f ↦ f∘T⁻¹` evaluated along `E`.

use std::collections::HashMap;

use serde::Serialize;

use crate::code::{build_ag_code, LinearCode};
use crate::curve::{AutElement, Curve, CurvePoint};
use crate::error::{Error, Result};
use crate::group::{self, GroupElement};
use crate::perm::{kernel_of_map, PermGroup, Permutation};
use crate::rr::OnePointDivisor;

/// Largest length searched by default in [`paut_exhaustive`].
pub const DEFAULT_PAUT_N: usize = 8;

/// A code `C(D, E)` with a group of automorphisms fixing `D` and permuting `E`.
#[derive(Clone, Debug)]
pub struct ActionContext {
    curve: Curve,
    divisor: OnePointDivisor,
    points: Vec<CurvePoint>,
    index: HashMap<CurvePoint, usize>,
    stab: Vec<AutElement>,
    code: LinearCode,
}

impl ActionContext {
    /// Checks every element of `stab` against the base point and `points`.
    pub fn new(
        curve: Curve,
        divisor: OnePointDivisor,
        points: Vec<CurvePoint>,
        mut stab: Vec<AutElement>,
    ) -> Result<Self> {
        if points.len() as u64 <= divisor.degree() as u64 {
            return Err(Error::InvalidParameter(format!(
                "need n > deg D for an injective evaluation map, got n = {} and deg D = {}",
                points.len(),
                divisor.degree()
            )));
        }
        let code = build_ag_code(&curve, &divisor, &points)?;
        let index: HashMap<CurvePoint, usize> =
            points.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        for t in &stab {
            if t.apply(&divisor.base()) != divisor.base() {
                return Err(Error::NotInStabilizer(format!("{t} moves the base point")));
            }
            if points.iter().any(|p| !index.contains_key(&t.apply(p))) {
                return Err(Error::NotInStabilizer(format!(
                    "{t} does not permute the evaluation points"
                )));
            }
        }
        stab.sort();
        stab.dedup();
        Ok(Self {
            curve,
            divisor,
            points,
            index,
            stab,
            code,
        })
    }

    /// Keeps the elements of `group` that fix the base point and permute `points`.
    pub fn from_group(
        curve: Curve,
        divisor: OnePointDivisor,
        points: Vec<CurvePoint>,
        group: &[AutElement],
    ) -> Result<Self> {
        let members: std::collections::HashSet<&CurvePoint> = points.iter().collect();
        let stab = group
            .iter()
            .filter(|t| {
                t.apply(&divisor.base()) == divisor.base()
                    && points.iter().all(|p| members.contains(&t.apply(p)))
            })
            .copied()
            .collect();
        Self::new(curve, divisor, points, stab)
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn divisor(&self) -> &OnePointDivisor {
        &self.divisor
    }

    pub fn points(&self) -> &[CurvePoint] {
        &self.points
    }

    pub fn stab(&self) -> &[AutElement] {
        &self.stab
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn rho(&self, t: &AutElement) -> Result<Permutation> {
        if t.apply(&self.divisor.base()) != self.divisor.base() {
            return Err(Error::NotInStabilizer(format!("{t} moves the base point")));
        }
        let images = self
            .points
            .iter()
            .map(|p| {
                self.index.get(&t.apply(p)).copied().ok_or_else(|| {
                    Error::NotInStabilizer(format!("{t} sends {p} outside the evaluation set"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_images(images)
    }

    /// The image of `ρ` as a group and its kernel. Asserts
    /// `|image| · |kernel| = |stab|`.
    pub fn rho_image_and_kernel(&self) -> Result<(PermGroup, Vec<AutElement>)> {
        let n = self.points.len();
        let rhos: Vec<Permutation> = self
            .stab
            .iter()
            .map(|t| self.rho(t))
            .collect::<Result<_>>()?;
        let image = PermGroup::from_elements(n, rhos.clone())?;
        let lookup: HashMap<AutElement, usize> =
            self.stab.iter().enumerate().map(|(i, t)| (*t, i)).collect();
        let kernel = kernel_of_map(&self.stab, |t| rhos[lookup[t]].clone())?;
        assert_eq!(
            image.order() * kernel.len(),
            self.stab.len(),
            "first isomorphism theorem violated"
        );
        Ok((image, kernel))
    }
}

pub fn is_code_automorphism(code: &LinearCode, perm: &Permutation) -> Result<bool> {
    Ok(code.permute_coords(perm)? == *code)
}

/// Every coordinate permutation preserving `code`, by search over `S_n`.
pub fn paut_exhaustive(code: &LinearCode, cap_n: usize) -> Result<PermGroup> {
    let n = code.length();
    if n > cap_n {
        return Err(Error::CapExceeded {
            what: "exhaustive permutation search length",
            cap: cap_n as u64,
        });
    }
    let mut images: Vec<usize> = (0..n).collect();
    let mut found = Vec::new();
    loop {
        // a permuted code equals the code iff every permuted reduced row lies in it
        let preserved = code.rref().iter().all(|row| {
            let mut moved = row.clone();
            for (i, &v) in row.iter().enumerate() {
                moved[images[i]] = v;
            }
            code.contains(&moved)
        });
        if preserved {
            found.push(Permutation::from_images(images.clone())?);
        }
        if !next_permutation(&mut images) {
            break;
        }
    }
    PermGroup::from_elements(n, found)
}

/// Lexicographic successor; false once `v` is the last arrangement.
fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len())
        .rev()
        .find(|&j| v[j] > v[i - 1])
        .expect("successor exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// `deg D ≥ 2g + 1` and `n ≥ (1 + g) deg D`.
pub fn corollary_applies(g: u64, deg_d: u64, n: u64) -> bool {
    deg_d > 2 * g && n >= (1 + g) * deg_d
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// `ρ` is injective and onto `PAut(C)`.
    Isomorphic,
    /// The image of `ρ` is strictly smaller than `PAut(C)`.
    ProperSubgroup,
    /// `PAut(C)` was not computed; only `|PAut(C)| ≥ |image|` is certified.
    LowerBoundOnly,
    /// `ρ` is onto `PAut(C)` but has a nontrivial kernel.
    NotInjective,
}

/// A published value that the computation does not reproduce.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub id: String,
    pub paper_value: String,
    pub computed_value: String,
    pub note: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorrespondenceReport {
    pub stab_order: usize,
    pub image_order: usize,
    pub kernel_order: usize,
    pub kernel_elements: Vec<AutElement>,
    pub paut_order: Option<usize>,
    pub paut_center_order: Option<usize>,
    pub image_is_normal_in_paut: Option<bool>,
    pub images_are_code_automorphisms: bool,
    pub corollary_applies: bool,
    pub verdict: Verdict,
    pub discrepancies: Vec<Discrepancy>,
}

/// Compares the image of `ρ` with `PAut(C)`; the latter only when `n ≤ paut_n`.
pub fn verify_correspondence(ctx: &ActionContext, paut_n: usize) -> Result<CorrespondenceReport> {
    let (image, kernel) = ctx.rho_image_and_kernel()?;
    let code = ctx.code();
    let images_ok = image
        .elements()
        .iter()
        .map(|g| is_code_automorphism(code, g))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|ok| ok);
    let paut = if code.length() <= paut_n {
        Some(paut_exhaustive(code, paut_n)?)
    } else {
        None
    };
    let verdict = match &paut {
        None => Verdict::LowerBoundOnly,
        Some(p) if p.order() != image.order() => Verdict::ProperSubgroup,
        Some(_) if kernel.len() > 1 => Verdict::NotInjective,
        Some(_) => Verdict::Isomorphic,
    };
    let g = ctx.curve().genus() as u64;
    Ok(CorrespondenceReport {
        stab_order: ctx.stab().len(),
        image_order: image.order(),
        kernel_order: kernel.len(),
        kernel_elements: kernel,
        paut_order: paut.as_ref().map(PermGroup::order),
        paut_center_order: paut.as_ref().map(|p| p.center().order()),
        image_is_normal_in_paut: paut
            .as_ref()
            .map(|p| image.is_subgroup_of(p) && p.is_normal(&image)),
        images_are_code_automorphisms: images_ok,
        corollary_applies: corollary_applies(
            g,
            ctx.divisor().degree() as u64,
            code.length() as u64,
        ),
        verdict,
        discrepancies: Vec::new(),
    })
}

/// `ρ(T ∘ S) = ρ(T) ∘ ρ(S)` over all pairs of `ctx.stab()`.
pub fn homomorphism_law_holds(ctx: &ActionContext) -> Result<bool> {
    let stab = ctx.stab();
    let rhos: Vec<Permutation> = stab.iter().map(|t| ctx.rho(t)).collect::<Result<_>>()?;
    for (i, t) in stab.iter().enumerate() {
        for (j, s) in stab.iter().enumerate() {
            if ctx.rho(&t.compose(s))? != rhos[i].compose(&rhos[j]) {
                return Ok(false);
            }
        }
    }
    Ok(group::is_closed(stab))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldCtx;

    fn example2() -> ActionContext {
        let c = Curve::new(7, 1).unwrap();
        let d = OnePointDivisor::new(&c, CurvePoint::Infinity, 5).unwrap();
        let group = c.aut_group().unwrap();
        ActionContext::from_group(c, d, c.points()[1..].to_vec(), &group).unwrap()
    }

    #[test]
    fn next_permutation_counts() {
        let mut v = vec![0, 1, 2, 3];
        let mut count = 1;
        while next_permutation(&mut v) {
            count += 1;
        }
        assert_eq!(count, 24);
        assert_eq!(v, vec![3, 2, 1, 0]);
    }

    #[test]
    fn corollary_predicate() {
        assert!(corollary_applies(3, 7, 84));
        assert!(corollary_applies(3, 21, 84));
        assert!(!corollary_applies(3, 22, 84));
        assert!(!corollary_applies(3, 5, 7));
        assert!(!corollary_applies(3, 6, 84));
    }

    #[test]
    fn rho_on_standard_generators() {
        let ctx = example2();
        let c = *ctx.curve();
        let [g1, g2, g3, g4] = c.standard_generators(c.field().element(2)).unwrap();
        assert_eq!(ctx.rho(&g1).unwrap().to_string(), "()");
        assert_eq!(ctx.rho(&g2).unwrap().to_string(), "(2,5,3)(4,6,7)");
        assert_eq!(ctx.rho(&g3).unwrap().to_string(), "(1,2,3,4,5,6,7)");
        assert!(matches!(ctx.rho(&g4), Err(Error::NotInStabilizer(_))));
    }

    #[test]
    fn example2_structure() {
        let ctx = example2();
        assert_eq!(ctx.stab().len(), 42);
        let (image, kernel) = ctx.rho_image_and_kernel().unwrap();
        assert_eq!(image.order(), 21);
        assert_eq!(kernel.len(), 2);
        assert!(homomorphism_law_holds(&ctx).unwrap());
        let report = verify_correspondence(&ctx, DEFAULT_PAUT_N).unwrap();
        assert_eq!(report.paut_order, Some(42));
        assert_eq!(report.paut_center_order, Some(1));
        assert_eq!(report.image_is_normal_in_paut, Some(true));
        assert!(report.images_are_code_automorphisms);
        assert!(!report.corollary_applies);
        assert_eq!(report.verdict, Verdict::ProperSubgroup);
    }

    #[test]
    fn transposition_is_not_an_automorphism() {
        let ctx = example2();
        let t = Permutation::parse_cycles(7, "(1,2)").unwrap();
        assert!(!is_code_automorphism(ctx.code(), &t).unwrap());
        assert!(is_code_automorphism(ctx.code(), &Permutation::identity(7)).unwrap());
    }

    #[test]
    fn paut_of_small_codes() {
        let f = FieldCtx::get(7, 1).unwrap();
        let code = LinearCode::from_rows(f, 2, vec![vec![f.one(), f.one()]]).unwrap();
        assert_eq!(paut_exhaustive(&code, 8).unwrap().order(), 2);
        let long = LinearCode::from_rows(f, 9, vec![vec![f.one(); 9]]).unwrap();
        assert!(paut_exhaustive(&long, 8).unwrap_err().is_cap_exceeded());
    }

    #[test]
    fn identity_only_context() {
        let c = Curve::new(7, 1).unwrap();
        let d = OnePointDivisor::new(&c, CurvePoint::Infinity, 1).unwrap();
        let ctx = ActionContext::new(
            c,
            d,
            c.points()[1..].to_vec(),
            vec![AutElement::identity(&c)],
        )
        .unwrap();
        let report = verify_correspondence(&ctx, 0).unwrap();
        assert_eq!(
            (report.stab_order, report.image_order, report.kernel_order),
            (1, 1, 1)
        );
        assert_eq!(report.verdict, Verdict::LowerBoundOnly);
    }

    #[test]
    fn context_rejects_foreign_elements() {
        let c = Curve::new(7, 1).unwrap();
        let d = OnePointDivisor::new(&c, CurvePoint::Infinity, 5).unwrap();
        let g4 = c.standard_generators(c.field().element(3)).unwrap()[3];
        let pts = c.points()[1..].to_vec();
        assert!(ActionContext::new(c, d, pts.clone(), vec![g4]).is_err());
        let g3 = c.standard_generators(c.field().element(3)).unwrap()[2];
        assert!(ActionContext::new(c, d, pts[..6].to_vec(), vec![g3]).is_err());
        let big = OnePointDivisor::new(&c, CurvePoint::Infinity, 7).unwrap();
        assert!(ActionContext::new(c, big, pts, vec![]).is_err());
    }
}
