//! String-net state spaces of `C_r`: the sphere, closed surfaces via the
//! puncture projector on `C(1, H^{⊗g})`, and the annulus.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coends::{central_hull, h_power, hom_space_basis, jmath, HomSpaceVector};
use crate::cyclotomic::CycNum;
use crate::diagrams::{DiagramBuilder, Generator};
use crate::error::{Error, Result};
use crate::graded_category::{
    dimension, global_dimension, pivotal, CategoryParams, Grade, GradedMorphism, GradedObject,
    Side,
};
use crate::linalg::Matrix;

/// Default bound on the number of basis elements handled by brute force.
pub const DEFAULT_CAP: u128 = 10_000;

/// Orientation convention for the loop around the puncture.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LoopConvention {
    /// Anticlockwise loop labelled `U` weighted by `dim_r(U)/Dim(C)`.
    #[default]
    AnticlockwiseRight,
    /// Clockwise loop labelled `U` weighted by `dim_l(U)/Dim(C)`.
    ClockwiseLeft,
}

/// Result of the brute-force puncture projector computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectorReport {
    pub r: u32,
    pub genus: u32,
    pub analytic_scalar: CycNum,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub operator_matrix: Option<Vec<Vec<CycNum>>>,
    pub image_rank: usize,
    pub dimension: u128,
}

/// `Σ_U dim_r(U)^2 / Dim(C)`.
pub fn sphere_sum(params: &CategoryParams) -> CycNum {
    let mut acc = params.zero();
    for u in params.simples() {
        let d = dimension(&GradedObject::simple(params.r(), u as i64), Side::Right, params)
            .expect("parameters match");
        acc += &(&d * &d);
    }
    let dim = global_dimension(params);
    &acc * &dim.inverse().expect("global dimension is nonzero")
}

/// Dimension of the string-net space of the sphere: 1 if `Σ dim_r(U)^2/Dim = 1`,
/// otherwise 0.
pub fn sphere_sn_dim(params: &CategoryParams) -> u32 {
    u32::from(sphere_sum(params).is_one())
}

/// `(1/r) Σ_u ζ^{(2-2g)u}`, the scalar by which the puncture projector acts.
pub fn bp_scalar(params: &CategoryParams, genus: u32) -> CycNum {
    let r = params.r();
    let e = 2 - 2 * genus as i64;
    let mut acc = params.zero();
    for u in 0..r as i64 {
        acc += &params.zeta_pow(e * u);
    }
    acc.scale(&num_rational::BigRational::new(1.into(), (r as i64).into()))
}

/// Dimension of the string-net space of the closed genus-`g` surface.
pub fn sn_closed_dim(params: &CategoryParams, genus: u32) -> Result<u128> {
    let basis = hom_space_basis(genus, params)?;
    Ok(if bp_scalar(params, genus).is_one() {
        basis.dim
    } else {
        0
    })
}

/// Dimension of `C(C_a, A(C_b))`, the Hom-space model of the annulus.
pub fn annulus_hom_dim(a: Grade, b: Grade, params: &CategoryParams) -> usize {
    let hull = central_hull(&GradedObject::simple(params.r(), b as i64));
    let a = a % params.r();
    hull.object
        .basis_grades()
        .into_iter()
        .filter(|&g| g == a)
        .count()
}

fn check_cap(needed: u128, cap: u128) -> Result<()> {
    if needed > cap {
        return Err(Error::SizeCap { needed, cap });
    }
    Ok(())
}

/// Value of the puncture-projector diagram for the loop label `u` on the
/// basis vector with labels `(s_i, t_i)`; a morphism `1 → H^{⊗g}`.
///
/// Reference slicing, bottom to top:
/// 1. `coevL_U` opens the loop: `U U^∨`.
/// 2. The basis vector, the word `S_1^∨ T_1^∨ S_1 T_1 …`, is placed between
///    the two loop strands.
/// 3. A `coevR_U` cup is inserted between every pair of adjacent strands, so
///    that each strand `w` becomes `U w U^∨`.
/// 4. The pivotal box `δ_U` acts on the leading `U` of the first two groups
///    `U S^∨ U^∨`, `U T^∨ U^∨` of every handle.
/// 5. `ȷ_{X,Y}` with `X = U S U^∨`, `Y = U T U^∨` maps each handle into `H`.
pub fn bp_loop_diagram(
    params: &CategoryParams,
    labels: &[(Grade, Grade)],
    u: i64,
) -> Result<DiagramBuilder> {
    let r = params.r();
    let uo = GradedObject::simple(r, u);
    let mut grades = Vec::with_capacity(4 * labels.len());
    for &(s, t) in labels {
        let (s, t) = (s as i64, t as i64);
        grades.extend_from_slice(&[-s, -t, s, t]);
    }
    let word = GradedObject::word(r, &grades);
    let unit = GradedObject::unit(r);
    let mut b = DiagramBuilder::from_unit(r);
    b.append(Generator::CupLeft(uo.clone()))?;
    b.apply(1, Generator::Box(GradedMorphism::canonical(&unit, &word, &params.one())?))?;
    let n = grades.len();
    for k in 1..n {
        // the cup following strand k is inserted at factor 3k - 1
        let pos = 3 * k - 1;
        b.apply(pos, Generator::CupRight(uo.clone()))?;
    }
    let delta = pivotal(&uo, params)?;
    for h in 0..labels.len() {
        for j in 0..2 {
            b.apply(12 * h + 3 * j, Generator::Box(delta.clone()))?;
        }
    }
    let one = params.one();
    let hf = crate::coends::CoendH::new(r).object.num_factors();
    for (h, &(s, t)) in labels.iter().enumerate() {
        let x = GradedObject::word(r, &[u, s as i64, -u]);
        let y = GradedObject::word(r, &[u, t as i64, -u]);
        b.apply(h * hf, Generator::Box(jmath(&x, &y, &one)?))?;
    }
    Ok(b)
}

/// The transported puncture projector on `C(1, H^{⊗g})` as an exact matrix,
/// assembled column by column from brute-force diagram evaluation.
pub fn bp_operator_matrix(
    params: &CategoryParams,
    genus: u32,
    cap: u128,
    convention: LoopConvention,
) -> Result<Matrix> {
    let r = params.r();
    let basis = hom_space_basis(genus, params)?;
    check_cap(basis.dim, cap)?;
    let n = basis.dim as usize;
    let dim_c = global_dimension(params).inverse()?;
    let columns: Vec<Vec<CycNum>> = (0..n)
        .into_par_iter()
        .map(|i| -> Result<Vec<CycNum>> {
            let labels = basis.label(i as u128);
            let mut col = vec![params.zero(); n];
            for u in 0..r as i64 {
                let uo = GradedObject::simple(r, u);
                let (label, weight) = match convention {
                    LoopConvention::AnticlockwiseRight => {
                        (u, dimension(&uo, Side::Right, params)?)
                    }
                    LoopConvention::ClockwiseLeft => (-u, dimension(&uo, Side::Left, params)?),
                };
                let value = bp_loop_diagram(params, &labels, label)?.evaluate(params)?;
                let w = &weight * &dim_c;
                for (row, _, v) in value.matrix().entries() {
                    col[row] += &(v * &w);
                }
            }
            Ok(col)
        })
        .collect::<Result<_>>()?;
    let entries = columns.into_iter().enumerate().flat_map(|(j, col)| {
        col.into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(i, v)| (i, j, v))
    });
    Ok(Matrix::from_entries(r, n, n, entries))
}

/// Computes the puncture projector by brute force and checks that it is an
/// idempotent equal to [`bp_scalar`] times the identity.
pub fn tilde_bp_operator(params: &CategoryParams, genus: u32, cap: u128) -> Result<ProjectorReport> {
    let m = bp_operator_matrix(params, genus, cap, LoopConvention::default())?;
    let scalar = bp_scalar(params, genus);
    let n = m.nrows();
    if m.mul(&m)? != m {
        return Err(Error::Invariant("puncture projector is not idempotent".into()));
    }
    if m != Matrix::scalar_identity(&scalar, n) {
        return Err(Error::Invariant(
            "puncture projector differs from the analytic scalar".into(),
        ));
    }
    Ok(ProjectorReport {
        r: params.r(),
        genus,
        analytic_scalar: scalar,
        image_rank: m.rank(),
        operator_matrix: Some(m.to_dense()),
        dimension: n as u128,
    })
}

/// Applies a square operator on `C(1, H^{⊗g})` to a Hom-space vector.
pub fn apply_operator(m: &Matrix, v: &HomSpaceVector) -> Result<HomSpaceVector> {
    let col = Matrix::column_vector(v.r, &v.coords);
    Ok(HomSpaceVector {
        coords: m.mul(&col)?.column(0),
        ..v.clone()
    })
}

/// The closed-surface model object `H^{⊗g}`.
pub fn closed_model(params: &CategoryParams, genus: u32) -> GradedObject {
    h_power(params.r(), genus as usize)
}
