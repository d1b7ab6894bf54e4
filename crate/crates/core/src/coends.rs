//! Central hulls `A(X) = ⊕_U U^∨ ⊗ X ⊗ U`, the coend
//! `H = ⊕_{S,T} S^∨ T^∨ S T`, their structure maps, and the Hom-space model
//! `C(1, A(V_1) ⊗ … ⊗ H^{⊗g})` of string-net spaces.

use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycNum;
use crate::error::{domain, Error, Result};
use crate::graded_category::{
    dual_basis_pairs, CategoryParams, Grade, GradedMorphism, GradedObject, Word,
};
use crate::linalg::Matrix;

/// `A(X)` as a direct sum of the words `C_u^∨ ⊗ w ⊗ C_u`, for `u = 0..r`
/// and `w` running over the basis of `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralHull {
    /// The object `A(X)`.
    pub object: GradedObject,
    /// The object `X`.
    pub base: GradedObject,
    /// Offset of the summand `u` in the basis of `A(X)`.
    pub offsets: Vec<usize>,
}

impl CentralHull {
    /// The summand `C_u^∨ ⊗ X ⊗ C_u` as a tensor product.
    pub fn summand(&self, u: Grade) -> GradedObject {
        let r = self.base.r();
        GradedObject::simple(r, -(u as i64))
            .tensor(&self.base)
            .tensor(&GradedObject::simple(r, u as i64))
    }

    /// Inclusion of the summand `u` into `A(X)`.
    pub fn inclusion(&self, u: Grade) -> GradedMorphism {
        let r = self.base.r();
        let n = self.base.dim();
        let m = Matrix::from_entries(
            r,
            self.object.dim(),
            n,
            (0..n).map(|w| (self.offsets[u as usize] + w, w, CycNum::one(r))),
        );
        GradedMorphism::new(self.summand(u), self.object.clone(), m)
            .expect("summand inclusion is grade preserving")
    }

    /// Projection of `A(X)` onto the summand `u`.
    pub fn projection(&self, u: Grade) -> GradedMorphism {
        let r = self.base.r();
        let n = self.base.dim();
        let m = Matrix::from_entries(
            r,
            n,
            self.object.dim(),
            (0..n).map(|w| (w, self.offsets[u as usize] + w, CycNum::one(r))),
        );
        GradedMorphism::new(self.object.clone(), self.summand(u), m)
            .expect("summand projection is grade preserving")
    }
}

/// Builds the central hull `A(X)`.
pub fn central_hull(x: &GradedObject) -> CentralHull {
    let r = x.r();
    let n = x.dim();
    let mut words = Vec::with_capacity(r as usize * n);
    let mut offsets = Vec::with_capacity(r as usize);
    for u in 0..r {
        offsets.push(words.len());
        for i in 0..n {
            let mut w = vec![(r - u) % r];
            w.extend(x.basis_word(i).0);
            w.push(u);
            words.push(Word(w));
        }
    }
    CentralHull {
        object: GradedObject::direct_sum(r, words),
        base: x.clone(),
        offsets,
    }
}

/// The dinatural structure map `ι(X)_V : C_V^∨ ⊗ X ⊗ C_V → A(X)`, assembled
/// as `Σ_U Σ_α (ᾱ^∨ ⊗ id_X ⊗ α)` over a basis `α` of `C(C_V, C_U)`.
pub fn iota(x: &GradedObject, v: Grade, scale: &CycNum) -> Result<GradedMorphism> {
    let r = x.r();
    let hull = central_hull(x);
    let cv = GradedObject::simple(r, v as i64);
    let source = cv.dual().tensor(x).tensor(&cv);
    let mut total = GradedMorphism::zero(&source, &hull.object);
    let id_x = GradedMorphism::identity(x);
    for u in 0..r {
        for pair in dual_basis_pairs(&cv, u, scale)? {
            let middle = pair.alpha_bar.dual().tensor(&id_x)?.tensor(&pair.alpha)?;
            total = total.add(&hull.inclusion(u).compose(&middle)?)?;
        }
    }
    Ok(total)
}

/// The coend `H` with its summands `(s, t)` in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoendH {
    pub r: u32,
    pub summands: Vec<(Grade, Grade)>,
    pub object: GradedObject,
}

impl CoendH {
    pub fn new(r: u32) -> Self {
        let mut summands = Vec::with_capacity((r * r) as usize);
        let mut words = Vec::with_capacity((r * r) as usize);
        for s in 0..r {
            for t in 0..r {
                summands.push((s, t));
                words.push(Word(vec![(r - s) % r, (r - t) % r, s, t]));
            }
        }
        CoendH {
            r,
            summands,
            object: GradedObject::direct_sum(r, words),
        }
    }

    /// Index of the summand `(s, t)`.
    pub fn index(&self, s: Grade, t: Grade) -> usize {
        (s * self.r + t) as usize
    }

    /// The summand `C_s^∨ C_t^∨ C_s C_t` as a tensor word.
    pub fn summand(&self, s: Grade, t: Grade) -> GradedObject {
        let r = self.r as i64;
        GradedObject::word(self.r, &[-(s as i64), -(t as i64), s as i64 % r, t as i64 % r])
    }

    /// Inclusion of the summand `(s, t)` into `H`.
    pub fn inclusion(&self, s: Grade, t: Grade) -> GradedMorphism {
        let m = Matrix::from_entries(
            self.r,
            self.object.dim(),
            1,
            [(self.index(s, t), 0, CycNum::one(self.r))],
        );
        GradedMorphism::new(self.summand(s, t), self.object.clone(), m)
            .expect("summand inclusion is grade preserving")
    }
}

/// `H^{⊗g}`.
pub fn h_power(r: u32, genus: usize) -> GradedObject {
    let h = CoendH::new(r).object;
    let mut out = GradedObject::unit(r);
    for _ in 0..genus {
        out = out.tensor(&h);
    }
    out
}

/// The structure map `ȷ_{X,Y} : X^∨ ⊗ Y^∨ ⊗ X ⊗ Y → H`, assembled as
/// `Σ_{S,T} Σ_{α,β} (ᾱ^∨ ⊗ β̄^∨ ⊗ α ⊗ β)` over bases `α` of `C(X, C_S)` and
/// `β` of `C(Y, C_T)`.
pub fn jmath(x: &GradedObject, y: &GradedObject, scale: &CycNum) -> Result<GradedMorphism> {
    let r = x.r();
    if y.r() != r {
        return domain("objects of different categories");
    }
    let h = CoendH::new(r);
    let source = GradedObject::tensor_all(r, [&x.dual(), &y.dual(), x, y]);
    let mut total = GradedMorphism::zero(&source, &h.object);
    for s in 0..r {
        let alphas = dual_basis_pairs(x, s, scale)?;
        if alphas.is_empty() {
            continue;
        }
        for t in 0..r {
            let betas = dual_basis_pairs(y, t, scale)?;
            for a in &alphas {
                for b in &betas {
                    let term = a
                        .alpha_bar
                        .dual()
                        .tensor(&b.alpha_bar.dual())?
                        .tensor(&a.alpha)?
                        .tensor(&b.alpha)?;
                    total = total.add(&h.inclusion(s, t).compose(&term)?)?;
                }
            }
        }
    }
    Ok(total)
}

/// The basis of `C(1, H^{⊗g})`: one vector per tuple `(s_1, t_1, …, s_g, t_g)`,
/// in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomSpaceBasis {
    pub r: u32,
    pub genus: u32,
    pub dim: u128,
}

impl HomSpaceBasis {
    /// The label tuple `[(s_1, t_1), …]` of a basis index.
    pub fn label(&self, mut idx: u128) -> Vec<(Grade, Grade)> {
        let r = self.r as u128;
        let mut out = vec![(0, 0); self.genus as usize];
        for slot in out.iter_mut().rev() {
            let t = (idx % r) as Grade;
            idx /= r;
            let s = (idx % r) as Grade;
            idx /= r;
            *slot = (s, t);
        }
        out
    }

    /// The basis index of a label tuple.
    pub fn index(&self, labels: &[(Grade, Grade)]) -> u128 {
        let r = self.r as u128;
        labels
            .iter()
            .fold(0u128, |acc, &(s, t)| (acc * r + s as u128) * r + t as u128)
    }
}

/// Describes the basis of `C(1, H^{⊗g})`, of dimension `r^{2g}`.
pub fn hom_space_basis(genus: u32, params: &CategoryParams) -> Result<HomSpaceBasis> {
    let dim = (params.r() as u128)
        .checked_pow(2 * genus)
        .ok_or_else(|| Error::Domain("Hom-space dimension overflows".into()))?;
    Ok(HomSpaceBasis {
        r: params.r(),
        genus,
        dim,
    })
}

/// A vector of a Hom-space model `C(1, A(V_1) ⊗ … ⊗ A(V_b) ⊗ H^{⊗g})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomSpaceVector {
    pub r: u32,
    pub genus: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub boundary_data: Vec<GradedObject>,
    pub coords: Vec<CycNum>,
}

impl HomSpaceVector {
    /// The object `A(V_1) ⊗ … ⊗ H^{⊗g}` whose invariants this vector lives in.
    pub fn ambient(r: u32, genus: u32, boundary: &[GradedObject]) -> GradedObject {
        let mut out = GradedObject::unit(r);
        for v in boundary {
            out = out.tensor(&central_hull(v).object);
        }
        out.tensor(&h_power(r, genus as usize))
    }

    /// Reads off the coordinates of a morphism `1 → ambient`.
    pub fn from_morphism(genus: u32, boundary: Vec<GradedObject>, m: &GradedMorphism) -> Result<Self> {
        let r = m.source().r();
        if !m.source().is_unit() {
            return domain("Hom-space vectors are morphisms out of the unit");
        }
        if m.target() != &Self::ambient(r, genus, &boundary) {
            return domain("morphism does not land in the Hom-space model");
        }
        Ok(HomSpaceVector {
            r,
            genus,
            boundary_data: boundary,
            coords: m.matrix().column(0),
        })
    }

    /// The morphism `1 → ambient` with these coordinates.
    pub fn to_morphism(&self) -> Result<GradedMorphism> {
        let target = Self::ambient(self.r, self.genus, &self.boundary_data);
        if target.dim() != self.coords.len() {
            return domain("coordinate count does not match the Hom-space model");
        }
        GradedMorphism::new(
            GradedObject::unit(self.r),
            target,
            Matrix::column_vector(self.r, &self.coords),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn central_hull_of_unit_grade() {
        let hull = central_hull(&GradedObject::simple(3, 0));
        assert_eq!(hull.object.dim(), 3);
        assert!(hull.object.basis_grades().iter().all(|&g| g == 0));
        for b in 0..5u32 {
            let hull = central_hull(&GradedObject::simple(5, b as i64));
            assert_eq!(hull.object.basis_grades(), vec![b; 5]);
        }
        let x = GradedObject::regular(3).tensor(&GradedObject::simple(3, 1));
        assert_eq!(central_hull(&x).object.dim(), 3 * x.dim());
    }

    #[test]
    fn iota_is_the_summand_inclusion() {
        let r = 4;
        let x = GradedObject::simple(r, 1);
        let hull = central_hull(&x);
        for v in 0..r {
            let i = iota(&x, v, &CycNum::one(r)).unwrap();
            assert_eq!(i, hull.inclusion(v));
            let blocks = (0..r)
                .filter(|&u| !i.matrix().entries().all(|(row, _, _)| row / x.dim() != u as usize))
                .count();
            assert_eq!(blocks, 1);
        }
    }

    #[test]
    fn iota_dinaturality_for_scalar_endomorphisms() {
        let r = 3;
        let params = CategoryParams::new(r).unwrap();
        let x = GradedObject::simple(r, 2);
        for v in 0..r {
            let cv = GradedObject::simple(r, v as i64);
            let f = GradedMorphism::scalar(&cv, &params.zeta_pow(1).scale(&num_rational::BigRational::from_integer(3.into())));
            let i = iota(&x, v, &CycNum::one(r)).unwrap();
            let lhs = i
                .compose(&GradedMorphism::identity(&cv.dual()).tensor(&GradedMorphism::identity(&x)).unwrap().tensor(&f).unwrap())
                .unwrap();
            let rhs = i
                .compose(&f.dual().tensor(&GradedMorphism::identity(&x)).unwrap().tensor(&GradedMorphism::identity(&cv)).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn jmath_supports() {
        let r = 2;
        let c0 = GradedObject::simple(r, 0);
        let j = jmath(&c0, &c0, &CycNum::one(r)).unwrap();
        assert_eq!(j, CoendH::new(r).inclusion(0, 0));
        let h = CoendH::new(4);
        for a in 0..4 {
            for b in 0..4 {
                let j = jmath(&GradedObject::simple(4, a), &GradedObject::simple(4, b), &CycNum::one(4)).unwrap();
                let rows: Vec<usize> = j.matrix().entries().map(|(i, _, _)| i).collect();
                assert_eq!(rows, vec![h.index(a as u32, b as u32)]);
            }
        }
    }

    #[test]
    fn jmath_on_the_regular_object_hits_every_summand_once() {
        for r in 1..=3u32 {
            let f = GradedObject::regular(r);
            let j = jmath(&f, &f, &CycNum::one(r)).unwrap();
            assert_eq!(j.matrix().rank(), (r * r) as usize);
            for row in 0..(r * r) as usize {
                assert_eq!(j.matrix().row(row).len(), 1);
            }
        }
    }

    #[test]
    fn h_summands_have_grade_zero() {
        for r in 1..=6 {
            let h = CoendH::new(r);
            assert_eq!(h.summands.len(), (r * r) as usize);
            assert!(h.object.basis_grades().iter().all(|&g| g == 0));
        }
    }

    #[test]
    fn hom_space_dimensions() {
        let d = |g, r| hom_space_basis(g, &CategoryParams::new(r).unwrap()).unwrap().dim;
        assert_eq!(d(1, 3), 9);
        assert_eq!(d(0, 5), 1);
        assert_eq!(d(2, 2), 16);
        assert_eq!(h_power(3, 2).dim(), 81);
    }

    #[test]
    fn basis_labels_are_lexicographic() {
        let b = hom_space_basis(2, &CategoryParams::new(3).unwrap()).unwrap();
        assert_eq!(b.label(0), vec![(0, 0), (0, 0)]);
        assert_eq!(b.label(1), vec![(0, 0), (0, 1)]);
        assert_eq!(b.label(3), vec![(0, 0), (1, 0)]);
        assert_eq!(b.label(9), vec![(0, 1), (0, 0)]);
        for i in 0..b.dim {
            assert_eq!(b.index(&b.label(i)), i);
        }
    }

    #[test]
    fn universal_property_of_the_hull() {
        // any family φ_V factors through the ι_V via φ̂ = Σ_U φ_U ∘ π_U
        let r = 4;
        let params = CategoryParams::new(r).unwrap();
        let x = GradedObject::simple(r, 1);
        let hull = central_hull(&x);
        let target = GradedObject::simple(r, 1);
        let family: Vec<GradedMorphism> = (0..r)
            .map(|v| {
                GradedMorphism::canonical(&hull.summand(v), &target, &params.zeta_pow(v as i64 * 3 + 1)).unwrap()
            })
            .collect();
        let mut phi_hat = GradedMorphism::zero(&hull.object, &target);
        for (u, phi) in family.iter().enumerate() {
            phi_hat = phi_hat.add(&phi.compose(&hull.projection(u as u32)).unwrap()).unwrap();
        }
        for (v, phi) in family.iter().enumerate() {
            assert_eq!(&phi_hat.compose(&iota(&x, v as u32, &CycNum::one(r)).unwrap()).unwrap(), phi);
        }
        let stacked: Vec<Vec<CycNum>> = (0..r)
            .map(|v| iota(&x, v, &CycNum::one(r)).unwrap().matrix().column(0))
            .collect();
        assert_eq!(crate::linalg::rank_of_vectors(r, &stacked), hull.object.dim());
    }

    #[test]
    fn hom_space_vector_json() {
        let v = HomSpaceVector {
            r: 2,
            genus: 1,
            boundary_data: vec![],
            coords: (0..4).map(|i| CycNum::from_int(2, i)).collect(),
        };
        let s = serde_json::to_string(&v).unwrap();
        assert!(s.starts_with(r#"{"r":2,"genus":1,"coords":"#));
        assert_eq!(serde_json::from_str::<HomSpaceVector>(&s).unwrap(), v);
        let m = v.to_morphism().unwrap();
        assert_eq!(HomSpaceVector::from_morphism(1, vec![], &m).unwrap(), v);
    }

    proptest! {
        #[test]
        fn structure_maps_do_not_depend_on_the_dual_basis(r in 1u32..=4, a in 0u32..4, b in 0u32..4, c in 2i64..9) {
            let x = GradedObject::regular(r);
            let y = GradedObject::simple(r, (b % r) as i64).tensor(&GradedObject::simple(r, a as i64));
            let one = CycNum::one(r);
            let scaled = CycNum::from_int(r, c);
            prop_assert_eq!(jmath(&x, &y, &one).unwrap(), jmath(&x, &y, &scaled).unwrap());
            prop_assert_eq!(iota(&x, a % r, &one).unwrap(), iota(&x, a % r, &scaled).unwrap());
        }
    }
}
