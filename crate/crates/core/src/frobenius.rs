//! The group algebra `F = CZ_r` as a Δ-separable Frobenius algebra in `C_r`.
//!
//! Besides the structure maps this module builds the Nakayama automorphism
//! from its defining diagram, the face and edge labels `M^{(n)}` and `E_u`,
//! the handle map `χ(a, b) : F → H ⊗ F` and the map `σ_F` from markings of
//! the standard decomposition to `C(1, H^{⊗g})`.

use serde::Serialize;

use crate::coends::{h_power, jmath, HomSpaceVector};
use crate::cyclotomic::CycNum;
use crate::diagrams::{DiagramBuilder, Generator};
use crate::error::{domain, Error, Result};
use crate::graded_category::{pivotal, CategoryParams, GradedMorphism, GradedObject};
use crate::linalg::Matrix;
use crate::rspin::{decomposition_for_genus, is_admissible, MarkedPlcw};

/// Structure maps of a Frobenius algebra in `C_r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusAlgebraData {
    pub params: CategoryParams,
    pub object: GradedObject,
    pub mu: GradedMorphism,
    pub eta: GradedMorphism,
    pub delta: GradedMorphism,
    pub eps: GradedMorphism,
}

/// `CZ_r` with `Δ(1_a) = (1/r) Σ_b 1_{a+b} ⊗ 1_{-b}` and `ε(1_a) = r δ_{a,0}`.
/// All axioms are checked before the data is returned.
pub fn frobenius_zr(params: &CategoryParams) -> Result<FrobeniusAlgebraData> {
    let r = params.r();
    let f = GradedObject::regular(r);
    let ff = f.tensor(&f);
    let one = GradedObject::unit(r);
    let n = r as usize;
    let pair = |a: usize, b: usize| a * n + b;
    let mu = Matrix::from_entries(r, n, n * n, (0..n).flat_map(|a| (0..n).map(move |b| ((a + b) % n, pair(a, b), CycNum::one(r)))));
    let inv_r = params.frac(1, r as i64);
    let delta = Matrix::from_entries(
        r,
        n * n,
        n,
        (0..n).flat_map(|a| {
            let c = inv_r.clone();
            (0..n).map(move |b| (pair((a + b) % n, (n - b) % n), a, c.clone()))
        }),
    );
    let eta = Matrix::from_entries(r, n, 1, [(0, 0, CycNum::one(r))]);
    let eps = Matrix::from_entries(r, 1, n, [(0, 0, params.frac(r as i64, 1))]);
    let data = FrobeniusAlgebraData {
        params: *params,
        mu: GradedMorphism::new(ff.clone(), f.clone(), mu)?,
        eta: GradedMorphism::new(one.clone(), f.clone(), eta)?,
        delta: GradedMorphism::new(f.clone(), ff, delta)?,
        eps: GradedMorphism::new(f.clone(), one, eps)?,
        object: f,
    };
    let failures = data.axiom_failures()?;
    if !failures.is_empty() {
        return Err(Error::Invariant(failures.join("; ")));
    }
    Ok(data)
}

/// Outcome of one Frobenius-algebra identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub holds: bool,
}

impl FrobeniusAlgebraData {
    fn id(&self) -> GradedMorphism {
        GradedMorphism::identity(&self.object)
    }

    /// Evaluates associativity, unitality, coassociativity, counitality,
    /// the two Frobenius relations and Δ-separability.
    pub fn check_axioms(&self) -> Result<Vec<AxiomCheck>> {
        let id = self.id();
        let mu = &self.mu;
        let delta = &self.delta;
        let checks = vec![
            ("associativity", mu.compose(&mu.tensor(&id)?)? == mu.compose(&id.tensor(mu)?)?),
            ("left unit", mu.compose(&self.eta.tensor(&id)?)?.matrix() == id.matrix()),
            ("right unit", mu.compose(&id.tensor(&self.eta)?)?.matrix() == id.matrix()),
            ("coassociativity", delta.tensor(&id)?.compose(delta)? == id.tensor(delta)?.compose(delta)?),
            ("left counit", self.eps.tensor(&id)?.compose(delta)?.matrix() == id.matrix()),
            ("right counit", id.tensor(&self.eps)?.compose(delta)?.matrix() == id.matrix()),
            (
                "frobenius left",
                id.tensor(mu)?.compose(&delta.tensor(&id)?)? == delta.compose(mu)?,
            ),
            (
                "frobenius right",
                mu.tensor(&id)?.compose(&id.tensor(delta)?)? == delta.compose(mu)?,
            ),
            ("separability", mu.compose(delta)? == id),
        ];
        Ok(checks
            .into_iter()
            .map(|(name, holds)| AxiomCheck { name, holds })
            .collect())
    }

    fn axiom_failures(&self) -> Result<Vec<String>> {
        Ok(self
            .check_axioms()?
            .into_iter()
            .filter(|c| !c.holds)
            .map(|c| format!("{} fails", c.name))
            .collect())
    }

    /// The iterated product `μ^{(n)} : F^{⊗n} → F`, with `μ^{(1)} = id`.
    pub fn iterated_product(&self, n: usize) -> Result<GradedMorphism> {
        if n == 0 {
            return Ok(self.eta.clone());
        }
        let mut m = self.id();
        for _ in 1..n {
            m = self.mu.compose(&m.tensor(&self.id())?)?;
        }
        Ok(m)
    }
}

/// The Nakayama automorphism computed from its defining diagram,
/// `(id_F ⊗ evR_F)(Δη ⊗ id_{F^∨})(εμ ⊗ id_{F^∨})(id_F ⊗ coevL_F)`.
pub fn nakayama_diagram(f: &FrobeniusAlgebraData) -> Result<GradedMorphism> {
    let x = &f.object;
    let mut b = DiagramBuilder::new(x.clone());
    b.append(Generator::CupLeft(x.clone()))?;
    b.apply(0, Generator::Box(f.mu.clone()))?;
    b.apply(0, Generator::Box(f.eps.clone()))?;
    b.apply(0, Generator::Box(f.eta.clone()))?;
    b.apply(0, Generator::Box(f.delta.clone()))?;
    b.apply(1, Generator::CapRight(x.clone()))?;
    b.evaluate(&f.params)
}

/// The inverse Nakayama automorphism from the mirrored diagram,
/// `(evL_F ⊗ id_F)(id_{F^∨} ⊗ Δη)(id_{F^∨} ⊗ εμ)(coevR_F ⊗ id_F)`.
pub fn nakayama_inverse_diagram(f: &FrobeniusAlgebraData) -> Result<GradedMorphism> {
    let x = &f.object;
    let mut b = DiagramBuilder::new(x.clone());
    b.apply(0, Generator::CupRight(x.clone()))?;
    b.apply(1, Generator::Box(f.mu.clone()))?;
    b.apply(1, Generator::Box(f.eps.clone()))?;
    b.append(Generator::Box(f.eta.clone()))?;
    b.apply(1, Generator::Box(f.delta.clone()))?;
    b.apply(0, Generator::CapLeft(x.clone()))?;
    b.evaluate(&f.params)
}

/// `N^k` in closed form: `1_a ↦ ζ^{-ka} 1_a`.
pub fn nakayama_power(f: &FrobeniusAlgebraData, k: i64) -> GradedMorphism {
    let x = &f.object;
    let entries = x
        .basis_grades()
        .into_iter()
        .enumerate()
        .map(|(i, a)| (i, i, f.params.zeta_pow(-k * a as i64)));
    let m = Matrix::from_entries(f.params.r(), x.dim(), x.dim(), entries);
    GradedMorphism::new(x.clone(), x.clone(), m).expect("diagonal maps preserve grades")
}

/// The Nakayama automorphism together with its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Nakayama {
    pub n: GradedMorphism,
    pub n_inverse: GradedMorphism,
}

/// Computes `N` and `N^{-1}` diagrammatically and checks them against the
/// closed form and against each other.
pub fn nakayama(f: &FrobeniusAlgebraData) -> Result<Nakayama> {
    let n = nakayama_diagram(f)?;
    let n_inverse = nakayama_inverse_diagram(f)?;
    if n != nakayama_power(f, 1) {
        return Err(Error::Invariant("Nakayama diagram disagrees with the closed form".into()));
    }
    if n.compose(&n_inverse)? != GradedMorphism::identity(&f.object) {
        return Err(Error::Invariant("N ∘ N^{-1} is not the identity".into()));
    }
    Ok(Nakayama { n, n_inverse })
}

/// `M^{(n)} = (ε ∘ μ^{(n)})^∨ ∈ C(1, (F^∨)^{⊗n})`.
pub fn face_label(n: usize, f: &FrobeniusAlgebraData) -> Result<GradedMorphism> {
    if n == 0 {
        return domain("face labels need at least one leg");
    }
    Ok(f.eps.compose(&f.iterated_product(n)?)?.dual())
}

/// `E_u = (N^u ⊗ id) ∘ Δ ∘ η ∈ C(1, F ⊗ F)`.
pub fn edge_label(u: i64, f: &FrobeniusAlgebraData) -> Result<GradedMorphism> {
    nakayama_power(f, u)
        .tensor(&GradedMorphism::identity(&f.object))?
        .compose(&f.delta.compose(&f.eta)?)
}

/// The pair `(M^{(n)}, E_u)`.
pub fn face_and_edge_labels(n: usize, u: i64, f: &FrobeniusAlgebraData) -> Result<(GradedMorphism, GradedMorphism)> {
    Ok((face_label(n, f)?, edge_label(u, f)?))
}

/// Rotates `e ∈ C(1, X ⊗ Y)` by a half turn into `C(1, Y ⊗ X)`: the left
/// leg is carried over to the right, then `δ_X^{-1}` identifies `X^∨∨`
/// with `X`.
pub fn rotate_half_turn(e: &GradedMorphism, x: &GradedObject, params: &CategoryParams) -> Result<GradedMorphism> {
    let xf = x.num_factors();
    let mut b = DiagramBuilder::from_unit(params.r());
    b.append(Generator::CupLeft(x.dual()))?;
    b.apply(xf, Generator::Box(e.clone()))?;
    b.apply(0, Generator::CapLeft(x.clone()))?;
    let rotated = b.evaluate(params)?;
    let y = rotated.target().slice(0, rotated.target().num_factors() - xf);
    let inv = pivotal(x, params)?
        .matrix()
        .entries()
        .map(|(i, j, v)| v.inverse().map(|w| (i, j, w)))
        .collect::<Result<Vec<_>>>()?;
    let inv = GradedMorphism::new(x.clone(), x.clone(), Matrix::from_entries(params.r(), x.dim(), x.dim(), inv))?;
    GradedMorphism::identity(&y).tensor(&inv)?.compose(&rotated)
}

/// `χ(a, b) : F → H ⊗ F`, evaluated from its slice diagram: two
/// `coevR_F` cups feed the product ladder, two coproducts split off the
/// legs that pass through `N^{-a-1}` and `N^{-b-1}`, and `ȷ_{F,F}` closes
/// the four legs into `H`.
pub fn chi(a: i64, b: i64, f: &FrobeniusAlgebraData) -> Result<GradedMorphism> {
    let x = &f.object;
    let params = &f.params;
    let mut d = DiagramBuilder::new(x.clone());
    d.apply(0, Generator::CupRight(x.clone()))?;
    d.apply(1, Generator::Box(f.mu.clone()))?;
    d.apply(1, Generator::CupRight(x.clone()))?;
    d.apply(2, Generator::Box(f.mu.clone()))?;
    d.apply(2, Generator::Box(f.delta.clone()))?;
    d.apply(3, Generator::Box(f.delta.clone()))?;
    d.apply(2, Generator::Box(nakayama_power(f, -a - 1)))?;
    d.apply(3, Generator::Box(nakayama_power(f, -b - 1)))?;
    d.apply(0, Generator::Box(jmath(x, x, &params.one())?))?;
    d.evaluate(params)
}

/// The vector `v_{a,b} = Σ_{s,t} ζ^{sa+tb} e_{(s,t)} ∈ C(1, H)` in closed form.
pub fn v_vector(a: i64, b: i64, params: &CategoryParams) -> HomSpaceVector {
    let r = params.r();
    let coords = (0..r as i64)
        .flat_map(|s| (0..r as i64).map(move |t| (s, t)))
        .map(|(s, t)| params.zeta_pow(s * a + t * b))
        .collect();
    HomSpaceVector {
        r,
        genus: 1,
        boundary_data: Vec::new(),
        coords,
    }
}

/// Reads `v` off `χ(a, b)` by applying it to `η` and removing `F` with `ε`.
pub fn chi_vector(a: i64, b: i64, f: &FrobeniusAlgebraData) -> Result<HomSpaceVector> {
    let h = h_power(f.params.r(), 1);
    let m = GradedMorphism::identity(&h)
        .tensor(&f.eps)?
        .compose(&chi(a, b, f)?.compose(&f.eta)?)?;
    HomSpaceVector::from_morphism(1, Vec::new(), &m)
}

/// `σ_F(m) = (id ⊗ ε) ∘ (id ⊗ χ(s_{g,1}, s_{g,2})) ∘ … ∘ χ(s_{1,1}, s_{1,2}) ∘ η`
/// for an admissible marking of the standard decomposition; on the sphere
/// decomposition the chain is empty and `σ_F(m) = ε ∘ η`.
pub fn sigma_f(m: &MarkedPlcw, f: &FrobeniusAlgebraData) -> Result<HomSpaceVector> {
    let params = &f.params;
    if m.r != params.r() {
        return domain("marking and algebra disagree on r");
    }
    let genus = m.complex.validate()?;
    if m.complex != decomposition_for_genus(genus) {
        return domain("σ_F is only available on the standard decompositions");
    }
    let report = is_admissible(m);
    if !report.admissible {
        let lines = report
            .residues
            .iter()
            .filter(|v| v.residue != 0)
            .map(|v| format!("vertex {} has residue {}", v.vertex, v.residue))
            .collect();
        return Err(Error::Validation(lines));
    }
    let r = params.r();
    let index = |id: u32| m.edge_index[&id] as i64;
    let mut current = f.eta.clone();
    let mut prefix = GradedObject::unit(r);
    let h = h_power(r, 1);
    for i in 0..genus {
        let step = chi(index(2 * i), index(2 * i + 1), f)?;
        current = GradedMorphism::identity(&prefix).tensor(&step)?.compose(&current)?;
        prefix = prefix.tensor(&h);
    }
    let closed = GradedMorphism::identity(&prefix).tensor(&f.eps)?.compose(&current)?;
    HomSpaceVector::from_morphism(genus, Vec::new(), &closed)
}

/// `σ_F` applied to a list of markings, in parallel.
pub fn sigma_f_all(markings: &[MarkedPlcw], f: &FrobeniusAlgebraData) -> Result<Vec<HomSpaceVector>> {
    use rayon::prelude::*;
    markings.par_iter().map(|m| sigma_f(m, f)).collect()
}
