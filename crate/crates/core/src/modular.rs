//! Modular data, pivotal deformation by an invertible object, and the
//! charge criterion for the sphere with one marked point.
//!
//! The s-matrix is the unnormalised Hopf-link invariant
//! `s_{X,Y} = tr(c_{Y,X} ∘ c_{X,Y})`, so every quantity stays inside a single
//! cyclotomic field without square roots. Label `0` is the tensor unit.

use std::collections::BTreeMap;
use std::path::Path;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycNum;
use crate::error::{domain, Error, Result};
use crate::linalg::rank_of_rows;

/// Validated modular data over `Q(ζ_order)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModularData {
    pub labels: Vec<String>,
    pub dual: Vec<usize>,
    pub dims: Vec<CycNum>,
    pub s: Vec<Vec<CycNum>>,
    pub global_dim: CycNum,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModularDataRepr {
    labels: Vec<String>,
    dual: Vec<usize>,
    dims: Vec<CycNum>,
    s: Vec<Vec<CycNum>>,
    #[serde(default)]
    global_dim: Option<CycNum>,
}

/// The shipped sample files, by name.
pub const SAMPLES: [(&str, &str); 4] = [
    ("trivial", include_str!("../data/modular/trivial.json")),
    ("semion", include_str!("../data/modular/semion.json")),
    ("z3", include_str!("../data/modular/z3.json")),
    ("z5", include_str!("../data/modular/z5.json")),
];

/// Loads one of the shipped samples.
pub fn sample(name: &str) -> Result<ModularData> {
    SAMPLES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| ModularData::from_json(text))
        .unwrap_or_else(|| domain(format!("no shipped modular data named {name:?}")))
}

/// Reads and validates a modular data file.
pub fn load_modular_data(path: impl AsRef<Path>) -> Result<ModularData> {
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| Error::Parse(format!("{}: {e}", path.as_ref().display())))?;
    ModularData::from_json(&text)
}

fn lift(x: &CycNum, order: u32) -> CycNum {
    x.embed(order).expect("order divides the common order")
}

impl ModularData {
    /// Parses JSON and checks every invariant.
    pub fn from_json(text: &str) -> Result<Self> {
        let repr: ModularDataRepr = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::new(repr.labels, repr.dual, repr.dims, repr.s, repr.global_dim)
    }

    /// Builds modular data, moving every entry into a common field and
    /// checking the invariants. `global_dim`, when given, must equal
    /// `Σ dim(U)^2`.
    pub fn new(
        labels: Vec<String>,
        dual: Vec<usize>,
        dims: Vec<CycNum>,
        s: Vec<Vec<CycNum>>,
        global_dim: Option<CycNum>,
    ) -> Result<Self> {
        let n = labels.len();
        let mut problems = Vec::new();
        if n == 0 {
            return Err(Error::Validation(vec!["there must be at least one label".into()]));
        }
        if dual.len() != n || dims.len() != n || s.len() != n || s.iter().any(|row| row.len() != n) {
            problems.push(format!("labels, dual, dims and s must all have size {n}"));
            return Err(Error::Validation(problems));
        }
        let mut order = 1u32;
        for x in dims.iter().chain(s.iter().flatten()).chain(global_dim.iter()) {
            order = order.lcm(&x.order());
        }
        let dims: Vec<CycNum> = dims.iter().map(|x| lift(x, order)).collect();
        let s: Vec<Vec<CycNum>> = s.iter().map(|row| row.iter().map(|x| lift(x, order)).collect()).collect();
        let computed = dims.iter().fold(CycNum::zero(order), |acc, d| &acc + &(d * d));
        let data = ModularData {
            labels,
            dual,
            dims,
            s,
            global_dim: computed,
        };
        if let Some(g) = global_dim {
            if lift(&g, order) != data.global_dim {
                problems.push(format!("global_dim {g} differs from Σ dim² = {}", data.global_dim));
            }
        }
        problems.extend(data.violations());
        if problems.is_empty() {
            Ok(data)
        } else {
            Err(Error::Validation(problems))
        }
    }

    /// The field order all entries live in.
    pub fn order(&self) -> u32 {
        self.global_dim.order()
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    /// Every violated invariant, named by the failing identity.
    pub fn violations(&self) -> Vec<String> {
        let n = self.rank();
        let mut out = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        for l in &self.labels {
            if !seen.insert(l) {
                out.push(format!("label {l:?} appears twice"));
            }
        }
        for (i, &d) in self.dual.iter().enumerate() {
            if d >= n || self.dual[d] != i {
                out.push(format!("dual is not an involution at {}", self.labels[i]));
                return out;
            }
        }
        if self.dual[0] != 0 || !self.dims[0].is_one() {
            out.push("label 0 must be the self-dual unit of dimension 1".into());
        }
        for i in 0..n {
            if self.s[i][0] != self.dims[i] {
                out.push(format!("s_{{{},1}} ≠ dim({})", self.labels[i], self.labels[i]));
            }
            if self.dims[self.dual[i]] != self.dims[i] {
                out.push(format!("dim({0}^∨) ≠ dim({0})", self.labels[i]));
            }
            for j in 0..n {
                if self.s[i][j] != self.s[j][i] {
                    out.push(format!("s is not symmetric at ({}, {})", self.labels[i], self.labels[j]));
                }
            }
        }
        if self.dims.iter().any(CycNum::is_zero) {
            out.push("a simple has dimension 0".into());
            return out;
        }
        if self.global_dim.is_zero() {
            out.push("Σ dim² = 0".into());
            return out;
        }
        let rows = self
            .s
            .iter()
            .map(|row| row.iter().cloned().enumerate().collect::<BTreeMap<usize, CycNum>>());
        if rank_of_rows(self.order(), rows) != n {
            out.push("s is degenerate".into());
            return out;
        }
        let inv = self.global_dim.inverse().expect("nonzero");
        for a in 0..n {
            for b in 0..n {
                let sum = (0..n).fold(CycNum::zero(self.order()), |acc, r| {
                    &acc + &(&self.s[a][r] * &self.s[r][self.dual[b]])
                });
                let value = &sum * &inv;
                let expected = a == b;
                if value.is_one() != expected || (!expected && !value.is_zero()) {
                    out.push(format!(
                        "(1/Dim) Σ_R s_{{{},R}} s_{{R,{}^∨}} ≠ δ",
                        self.labels[a], self.labels[b]
                    ));
                }
            }
        }
        out
    }

    /// Index of a label name.
    pub fn label_index(&self, name: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == name)
            .map_or_else(|| domain(format!("unknown label {name:?}")), Ok)
    }

    fn check_label(&self, x: usize) -> Result<()> {
        if x < self.rank() {
            Ok(())
        } else {
            domain(format!("label index {x} out of range"))
        }
    }

    /// The character `R ↦ s_{X,R}/(dim X dim R)`.
    fn character(&self, x: usize) -> Vec<CycNum> {
        let dx = self.dims[x].inverse().expect("dimensions of simples are nonzero");
        (0..self.rank())
            .map(|r| &(&self.s[x][r] * &dx) * &self.dims[r].inverse().expect("nonzero"))
            .collect()
    }

    /// Whether `J` is invertible: `dim J = ±1` and the characters of `J` and
    /// `J^∨` multiply to the trivial character.
    pub fn is_invertible(&self, j: usize) -> Result<bool> {
        self.check_label(j)?;
        let d = &self.dims[j];
        let one = CycNum::one(self.order());
        if d != &one && d != &(-&one) {
            return Ok(false);
        }
        let cj = self.character(j);
        let cjd = self.character(self.dual[j]);
        Ok(cj.iter().zip(&cjd).all(|(a, b)| (a * b).is_one()))
    }

    fn require_invertible(&self, j: usize) -> Result<()> {
        if self.is_invertible(j)? {
            Ok(())
        } else {
            domain(format!("{} is not invertible", self.labels[j]))
        }
    }

    /// `J ⊗ X` for invertible `J`, found as the unique label whose
    /// s-matrix column equals `R ↦ s_{J,R} s_{X,R} / dim R`.
    pub fn fuse_invertible(&self, j: usize, x: usize) -> Result<usize> {
        self.require_invertible(j)?;
        self.check_label(x)?;
        let target: Vec<CycNum> = (0..self.rank())
            .map(|r| &(&self.s[j][r] * &self.s[x][r]) * &self.dims[r].inverse().expect("nonzero"))
            .collect();
        let hits: Vec<usize> = (0..self.rank()).filter(|&y| self.s[y] == target).collect();
        match hits.as_slice() {
            [y] => Ok(*y),
            _ => Err(Error::Invariant(format!(
                "no unique simple matches {} ⊗ {}",
                self.labels[j], self.labels[x]
            ))),
        }
    }

    /// The order of an invertible `J` under fusion.
    pub fn invertible_order(&self, j: usize) -> Result<usize> {
        let mut power = j;
        let mut k = 1;
        while power != 0 {
            power = self.fuse_invertible(j, power)?;
            k += 1;
            if k > self.rank() + 1 {
                return Err(Error::Invariant("fusion powers of J never reach the unit".into()));
            }
        }
        Ok(k)
    }
}

/// Parameters of the pointed sample generator: `Z_n` with `θ_a = ζ_n^{c a²}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointedFormSpec {
    pub n: u32,
    pub c: i64,
}

/// Pointed modular data: labels `0..n`, dims 1, `s_{a,b} = ζ_n^{2cab}`.
pub fn pointed_modular_data(spec: PointedFormSpec) -> Result<ModularData> {
    let n = spec.n;
    if n == 0 {
        return domain("n must be positive");
    }
    if (2 * spec.c).gcd(&(n as i64)) != 1 {
        return domain(format!("gcd(2c, n) = gcd({}, {n}) is not 1; the form is degenerate", 2 * spec.c));
    }
    let labels = (0..n).map(|a| a.to_string()).collect();
    let dual = (0..n as usize).map(|a| (n as usize - a) % n as usize).collect();
    let dims = vec![CycNum::one(n); n as usize];
    let s = (0..n as i64)
        .map(|a| (0..n as i64).map(|b| CycNum::root_of_unity(n, 2 * spec.c * a * b)).collect())
        .collect();
    ModularData::new(labels, dual, dims, s, None)
}

/// `(η^J)_X = s_{J,X} / (dim J dim X)`.
pub fn eta_scalar(j: usize, x: usize, m: &ModularData) -> Result<CycNum> {
    m.require_invertible(j)?;
    m.check_label(x)?;
    Ok(m.character(j)[x].clone())
}

/// Quantum dimensions of the deformed pivotal category.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeformedDims {
    pub dim_l: Vec<CycNum>,
    pub dim_r: Vec<CycNum>,
    pub is_spherical: bool,
}

/// `dim_r(X) = s_{J,X}/s_{J,1}` and `dim_l(X) = s_{J^∨,X}/s_{J^∨,1}`.
/// Sphericality is decided twice, from the dimensions and from the order
/// of `J`, and the two answers must agree.
pub fn deformed_dims(j: usize, m: &ModularData) -> Result<DeformedDims> {
    m.require_invertible(j)?;
    let jd = m.dual[j];
    let right = m.s[j][0].inverse()?;
    let left = m.s[jd][0].inverse()?;
    let dim_r: Vec<CycNum> = (0..m.rank()).map(|x| &m.s[j][x] * &right).collect();
    let dim_l: Vec<CycNum> = (0..m.rank()).map(|x| &m.s[jd][x] * &left).collect();
    let from_dims = dim_l == dim_r;
    let from_order = m.invertible_order(j)? <= 2;
    if from_dims != from_order {
        return Err(Error::Invariant(format!(
            "dimensions say spherical = {from_dims} but the order of J says {from_order}"
        )));
    }
    Ok(DeformedDims {
        dim_l,
        dim_r,
        is_spherical: from_dims,
    })
}

/// `(1/Dim) Σ_R s_{(J⊗J)^∨,R} s_{R,U} / dim U`.
pub fn charge_value(j: usize, u: usize, m: &ModularData) -> Result<CycNum> {
    m.check_label(u)?;
    let jj = m.fuse_invertible(j, j)?;
    let a = m.dual[jj];
    let sum = (0..m.rank()).fold(CycNum::zero(m.order()), |acc, r| &acc + &(&m.s[a][r] * &m.s[r][u]));
    Ok(&(&sum * &m.global_dim.inverse()?) * &m.dims[u].inverse()?)
}

/// Dimension of the string-net space of the sphere with one point marked by
/// the centre simple `(U, V)`: 1 if the charge value is 1 and `V = U^∨`,
/// otherwise 0.
pub fn sphere_charge_dim(j: usize, u: usize, v: usize, m: &ModularData) -> Result<u32> {
    m.check_label(v)?;
    let value = charge_value(j, u, m)?;
    Ok(u32::from(value.is_one() && v == m.dual[u]))
}

/// Every `(U, V, dim)` with nonzero dimension.
pub fn charge_support(j: usize, m: &ModularData) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for u in 0..m.rank() {
        for v in 0..m.rank() {
            if sphere_charge_dim(j, u, v, m)? == 1 {
                out.push((u, v));
            }
        }
    }
    Ok(out)
}
