//! Combinatorial `r`-spin structures on closed surfaces.
//!
//! A [`Plcw`] is a polygonal cell decomposition given by its vertices, oriented
//! edges and faces (cyclic boundary words with a preferred position). A
//! [`MarkedPlcw`] adds an edge index in `Z_r` to every edge; the marking is
//! admissible when the vertex congruence
//! `Σ_e ŝ_e ≡ D_v − N_v + 1 (mod r)` holds everywhere.

use std::collections::BTreeMap;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::graded_category::{reduce_grade, Grade};

/// An oriented edge `src → dst`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: u32,
    pub src: u32,
    pub dst: u32,
}

/// A polygon: its boundary as a cyclic list of `(edge id, ±1)` and the
/// position of the preferred edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub boundary: Vec<(u32, i8)>,
    pub preferred: usize,
}

/// A cell decomposition of a closed oriented surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Plcw {
    pub vertices: u32,
    pub edges: Vec<Edge>,
    pub faces: Vec<Face>,
}

/// Which endpoint of a face's preferred edge counts towards `D_v`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClockwiseConvention {
    /// The endpoint reached by running along the boundary against its
    /// cyclic order, that is, the start of the preferred edge as traversed.
    #[default]
    AgainstBoundaryOrder,
    /// The endpoint reached by running along the boundary in its cyclic
    /// order.
    AlongBoundaryOrder,
}

impl Plcw {
    /// Checks the closed-surface conditions and returns the genus.
    pub fn validate(&self) -> Result<u32> {
        let mut problems = Vec::new();
        let mut by_id = BTreeMap::new();
        for e in &self.edges {
            if e.src >= self.vertices || e.dst >= self.vertices {
                problems.push(format!("edge {} has an endpoint outside 0..{}", e.id, self.vertices));
            }
            if by_id.insert(e.id, *e).is_some() {
                problems.push(format!("edge id {} is used twice", e.id));
            }
        }
        let mut uses: BTreeMap<u32, Vec<i8>> = BTreeMap::new();
        for (fi, f) in self.faces.iter().enumerate() {
            if f.boundary.is_empty() {
                problems.push(format!("face {fi} has an empty boundary"));
                continue;
            }
            if f.preferred >= f.boundary.len() {
                problems.push(format!("face {fi} has preferred position {} out of range", f.preferred));
            }
            for &(id, sign) in &f.boundary {
                if sign != 1 && sign != -1 {
                    problems.push(format!("face {fi} uses edge {id} with sign {sign}"));
                }
                uses.entry(id).or_default().push(sign);
            }
            let walk: Option<Vec<(u32, u32)>> = f
                .boundary
                .iter()
                .map(|&(id, sign)| {
                    by_id.get(&id).map(|e: &Edge| if sign >= 0 { (e.src, e.dst) } else { (e.dst, e.src) })
                })
                .collect();
            match walk {
                None => problems.push(format!("face {fi} refers to an unknown edge")),
                Some(steps) => {
                    for k in 0..steps.len() {
                        let next = steps[(k + 1) % steps.len()];
                        if steps[k].1 != next.0 {
                            problems.push(format!("face {fi} boundary is not a closed walk at position {k}"));
                        }
                    }
                }
            }
        }
        for e in &self.edges {
            match uses.get(&e.id) {
                Some(signs) if signs.len() == 2 && signs[0] + signs[1] == 0 => {}
                Some(signs) => problems.push(format!(
                    "edge {} appears {} times in face boundaries, expected once in each direction",
                    e.id,
                    signs.len()
                )),
                None => problems.push(format!("edge {} lies on no face", e.id)),
            }
        }
        let chi = self.euler_characteristic();
        if chi > 2 || (2 - chi) % 2 != 0 {
            problems.push(format!("Euler characteristic {chi} is not that of a closed oriented surface"));
        }
        if !problems.is_empty() {
            return Err(Error::Validation(problems));
        }
        Ok(((2 - chi) / 2) as u32)
    }

    /// `V − E + F`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    fn edge(&self, id: u32) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    /// Edge ids in ascending order.
    pub fn edge_ids(&self) -> Vec<u32> {
        let mut ids: Vec<u32> = self.edges.iter().map(|e| e.id).collect();
        ids.sort_unstable();
        ids
    }
}

/// The modified edge index `ŝ_e` of `e` at its endpoint `v`.
pub fn hat_edge_index(e: &Edge, v: u32, s_e: Grade, r: u32) -> Result<Grade> {
    let s = s_e as i64;
    if e.src == v && e.dst == v {
        Ok(reduce_grade(-1, r))
    } else if e.src == v {
        Ok(reduce_grade(s, r))
    } else if e.dst == v {
        Ok(reduce_grade(-1 - s, r))
    } else {
        domain(format!("vertex {v} is not an endpoint of edge {}", e.id))
    }
}

/// A decomposition together with edge indices in `Z_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedPlcw {
    pub complex: Plcw,
    pub r: u32,
    pub edge_index: BTreeMap<u32, Grade>,
}

/// JSON form of the marking alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Marking {
    pub r: u32,
    pub indices: BTreeMap<u32, Grade>,
}

impl MarkedPlcw {
    pub fn new(complex: Plcw, r: u32, edge_index: BTreeMap<u32, Grade>) -> Result<Self> {
        if r == 0 {
            return domain("r must be positive");
        }
        complex.validate()?;
        let mut missing = Vec::new();
        for id in complex.edge_ids() {
            if !edge_index.contains_key(&id) {
                missing.push(format!("edge {id} has no index"));
            }
        }
        for id in edge_index.keys() {
            if complex.edge(*id).is_none() {
                missing.push(format!("index given for unknown edge {id}"));
            }
        }
        if !missing.is_empty() {
            return Err(Error::Validation(missing));
        }
        let edge_index = edge_index.into_iter().map(|(k, v)| (k, v % r)).collect();
        Ok(MarkedPlcw {
            complex,
            r,
            edge_index,
        })
    }

    pub fn marking(&self) -> Marking {
        Marking {
            r: self.r,
            indices: self.edge_index.clone(),
        }
    }
}

/// The congruence data at one vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexResidue {
    pub vertex: u32,
    pub hat_sum: Grade,
    pub d_v: u32,
    pub n_v: u32,
    /// `Σ ŝ_e − (D_v − N_v + 1) mod r`; zero when the congruence holds.
    pub residue: Grade,
}

/// Outcome of the admissibility test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub residues: Vec<VertexResidue>,
}

/// Per-vertex counts that do not depend on the edge indices.
struct VertexData {
    d: Vec<u32>,
    n: Vec<u32>,
    /// For every vertex, the edges incident to it (loops once), by position
    /// in `complex.edges`.
    incident: Vec<Vec<usize>>,
}

fn vertex_data(complex: &Plcw, convention: ClockwiseConvention) -> VertexData {
    let nv = complex.vertices as usize;
    let mut d = vec![0u32; nv];
    let mut n = vec![0u32; nv];
    let mut incident = vec![Vec::new(); nv];
    for (k, e) in complex.edges.iter().enumerate() {
        n[e.src as usize] += 1;
        n[e.dst as usize] += 1;
        incident[e.src as usize].push(k);
        if e.dst != e.src {
            incident[e.dst as usize].push(k);
        }
    }
    for f in &complex.faces {
        let (id, sign) = f.boundary[f.preferred];
        if let Some(e) = complex.edge(id) {
            let (start, end) = if sign >= 0 { (e.src, e.dst) } else { (e.dst, e.src) };
            let v = match convention {
                ClockwiseConvention::AgainstBoundaryOrder => start,
                ClockwiseConvention::AlongBoundaryOrder => end,
            };
            d[v as usize] += 1;
        }
    }
    VertexData { d, n, incident }
}

fn residues_with(complex: &Plcw, data: &VertexData, r: u32, index_of: impl Fn(usize) -> Grade) -> Vec<VertexResidue> {
    (0..complex.vertices)
        .map(|v| {
            let hat_sum = data.incident[v as usize]
                .iter()
                .map(|&k| {
                    hat_edge_index(&complex.edges[k], v, index_of(k), r).expect("incident edge") as i64
                })
                .sum::<i64>();
            let d_v = data.d[v as usize];
            let n_v = data.n[v as usize];
            let residue = reduce_grade(hat_sum - (d_v as i64 - n_v as i64 + 1), r);
            VertexResidue {
                vertex: v,
                hat_sum: reduce_grade(hat_sum, r),
                d_v,
                n_v,
                residue,
            }
        })
        .collect()
}

/// Evaluates the vertex congruence at every vertex.
pub fn is_admissible(m: &MarkedPlcw) -> AdmissibilityReport {
    is_admissible_with(m, ClockwiseConvention::default())
}

/// [`is_admissible`] with an explicit `D_v` convention.
pub fn is_admissible_with(m: &MarkedPlcw, convention: ClockwiseConvention) -> AdmissibilityReport {
    let data = vertex_data(&m.complex, convention);
    let residues = residues_with(&m.complex, &data, m.r, |k| m.edge_index[&m.complex.edges[k].id]);
    AdmissibilityReport {
        admissible: residues.iter().all(|v| v.residue == 0),
        residues,
    }
}

/// All admissible edge-index assignments, in lexicographic order of the
/// indices listed by ascending edge id.
pub fn enumerate_admissible(complex: &Plcw, r: u32, cap: u128) -> Result<Vec<MarkedPlcw>> {
    enumerate_admissible_with(complex, r, cap, ClockwiseConvention::default())
}

/// [`enumerate_admissible`] with an explicit `D_v` convention.
pub fn enumerate_admissible_with(
    complex: &Plcw,
    r: u32,
    cap: u128,
    convention: ClockwiseConvention,
) -> Result<Vec<MarkedPlcw>> {
    if r == 0 {
        return domain("r must be positive");
    }
    complex.validate()?;
    let ids = complex.edge_ids();
    let total = (r as u128)
        .checked_pow(ids.len() as u32)
        .unwrap_or(u128::MAX);
    if total > cap {
        return Err(Error::SizeCap { needed: total, cap });
    }
    let data = vertex_data(complex, convention);
    let position: BTreeMap<u32, usize> = ids.iter().enumerate().map(|(p, id)| (*id, p)).collect();
    let slot: Vec<usize> = complex.edges.iter().map(|e| position[&e.id]).collect();
    let found: Vec<Vec<Grade>> = (0..total as u64)
        .into_par_iter()
        .filter_map(|code| {
            let digits = decode(code, r, ids.len());
            let residues = residues_with(complex, &data, r, |k| digits[slot[k]]);
            residues.iter().all(|v| v.residue == 0).then_some(digits)
        })
        .collect();
    Ok(found
        .into_iter()
        .map(|digits| MarkedPlcw {
            complex: complex.clone(),
            r,
            edge_index: ids.iter().copied().zip(digits).collect(),
        })
        .collect())
}

fn decode(mut code: u64, r: u32, len: usize) -> Vec<Grade> {
    let mut digits = vec![0; len];
    for d in digits.iter_mut().rev() {
        *d = (code % r as u64) as Grade;
        code /= r as u64;
    }
    digits
}

/// `r^{2g}` if `r` divides `2 − 2g`, otherwise 0.
pub fn count_rspin(genus: u32, r: u32) -> u128 {
    if r == 0 {
        return 0;
    }
    let chi = 2 - 2 * genus as i64;
    if chi.is_multiple_of(&(r as i64)) {
        (r as u128).pow(2 * genus)
    } else {
        0
    }
}

/// One vertex, `2g` loops and a single `4g`-gon with boundary word
/// `f_1 f_2 f_1^{-1} f_2^{-1} …`. Handle `i` uses edge ids `2i` and `2i+1`.
pub fn standard_decomposition(genus: u32) -> Result<Plcw> {
    if genus == 0 {
        return domain("the one-face decomposition needs genus at least 1; use sphere_decomposition");
    }
    let edges = (0..2 * genus).map(|id| Edge { id, src: 0, dst: 0 }).collect();
    let boundary = (0..genus)
        .flat_map(|i| [(2 * i, 1), (2 * i + 1, 1), (2 * i, -1), (2 * i + 1, -1)])
        .collect();
    Ok(Plcw {
        vertices: 1,
        edges,
        faces: vec![Face {
            boundary,
            preferred: 0,
        }],
    })
}

/// The sphere as one bigon glued to itself along a single edge `0 → 1`.
pub fn sphere_decomposition() -> Plcw {
    Plcw {
        vertices: 2,
        edges: vec![Edge { id: 0, src: 0, dst: 1 }],
        faces: vec![Face {
            boundary: vec![(0, 1), (0, -1)],
            preferred: 0,
        }],
    }
}

/// The standard decomposition for `g ≥ 1` and the sphere decomposition for
/// `g = 0`.
pub fn decomposition_for_genus(genus: u32) -> Plcw {
    if genus == 0 {
        sphere_decomposition()
    } else {
        standard_decomposition(genus).expect("genus is positive")
    }
}

impl Serialize for MarkedPlcw {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            complex: &'a Plcw,
            r: u32,
            indices: &'a BTreeMap<u32, Grade>,
        }
        Repr {
            complex: &self.complex,
            r: self.r,
            indices: &self.edge_index,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MarkedPlcw {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Repr {
            complex: Plcw,
            r: u32,
            indices: BTreeMap<u32, Grade>,
        }
        let repr = Repr::deserialize(d)?;
        MarkedPlcw::new(repr.complex, repr.r, repr.indices).map_err(|e| D::Error::custom(e.to_string()))
    }
}
