//! The `stringnet` command-line interface.
//!
//! Every subcommand prints one JSON document on standard output. The
//! document echoes the parsed inputs, names the statement being computed and
//! carries the result. Flag errors exit with status 2, computation errors
//! with status 1.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use stringnet_core::coends::hom_space_basis;
use stringnet_core::centre::{annulus_centre_count, h_vector, list_centre_simples};
use stringnet_core::frobenius::{frobenius_zr, nakayama, nakayama_power, sigma_f, sigma_f_all};
use stringnet_core::graded_category::{CategoryParams, Grade};
use stringnet_core::linalg::rank_of_vectors;
use stringnet_core::modular::{
    charge_value, deformed_dims, load_modular_data, sample, sphere_charge_dim, ModularData,
};
use stringnet_core::rspin::{
    count_rspin, decomposition_for_genus, enumerate_admissible_with, is_admissible_with,
    ClockwiseConvention, MarkedPlcw, Marking, Plcw,
};
use stringnet_core::stringnet_spaces::{
    annulus_hom_dim, bp_operator_matrix, bp_scalar, sn_closed_dim, sphere_sum, LoopConvention,
    DEFAULT_CAP,
};
use stringnet_core::{CycNum, Error};

pub mod schemas;

/// Environment variable holding the default brute-force size cap.
pub const CAP_ENV: &str = "STRINGNET_CAP";

#[derive(Parser, Debug)]
#[command(name = "stringnet", version, about = "Exact string-net state spaces for Z_r-graded vector spaces")]
pub struct Cli {
    /// Print the JSON schema of a subcommand's output (or all schemas) and exit.
    #[arg(long, value_name = "COMMAND", num_args = 0..=1, default_missing_value = "all")]
    pub json_schema: Option<String>,

    /// Add decimal approximations next to every exact cyclotomic number.
    #[arg(long, global = true)]
    pub decimal: bool,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dimension of the string-net space of a closed surface.
    SnDim(SurfaceArgs),
    /// Dimension of the string-net space of the sphere.
    Sphere(RankArgs),
    /// The torus basis indexed by Drinfeld-centre simples.
    TorusBasis(RankArgs),
    /// Brute-force puncture projector on C(1, H^g).
    BpOperator(BpArgs),
    /// Annulus Hom-space dimension and centre multiplicity count.
    Annulus(AnnulusArgs),
    /// Closed-form number of r-spin structures.
    RspinCount(SurfaceArgs),
    /// All admissible markings of a decomposition.
    RspinEnumerate(EnumerateArgs),
    /// Admissibility report of one marking.
    RspinCheck(CheckArgs),
    /// The map from markings to C(1, H^g).
    SigmaF(SigmaArgs),
    /// Frobenius-algebra axioms and the Nakayama automorphism.
    FrobeniusCheck(RankArgs),
    /// Charge criterion for the sphere with one marked point.
    Charge(ChargeArgs),
    /// Validate a modular data file.
    ValidateModular(DataArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::SnDim(_) => "sn-dim",
            Command::Sphere(_) => "sphere",
            Command::TorusBasis(_) => "torus-basis",
            Command::BpOperator(_) => "bp-operator",
            Command::Annulus(_) => "annulus",
            Command::RspinCount(_) => "rspin-count",
            Command::RspinEnumerate(_) => "rspin-enumerate",
            Command::RspinCheck(_) => "rspin-check",
            Command::SigmaF(_) => "sigma-f",
            Command::FrobeniusCheck(_) => "frobenius-check",
            Command::Charge(_) => "charge",
            Command::ValidateModular(_) => "validate-modular",
        }
    }
}

#[derive(Args, Debug, Serialize)]
pub struct RankArgs {
    /// Rank of the grading group Z_r.
    #[arg(long)]
    pub r: i64,
    /// Exponent e with ζ = ζ_r^e; must be coprime to r.
    #[arg(long, default_value_t = 1)]
    pub zeta_exponent: i64,
}

#[derive(Args, Debug, Serialize)]
pub struct SurfaceArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub rank: RankArgs,
    #[arg(long)]
    pub genus: i64,
}

#[derive(Args, Debug, Serialize)]
pub struct CapArgs {
    /// Override the brute-force size cap.
    #[arg(long)]
    pub cap: Option<u128>,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LoopArg {
    AnticlockwiseRight,
    ClockwiseLeft,
}

#[derive(Args, Debug, Serialize)]
pub struct BpArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub surface: SurfaceArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub cap: CapArgs,
    #[arg(long, value_enum, default_value = "anticlockwise-right")]
    pub convention: LoopArg,
    /// Include the full operator matrix in the output.
    #[arg(long)]
    pub matrix: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct AnnulusArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub rank: RankArgs,
    #[arg(long)]
    pub a: i64,
    #[arg(long)]
    pub b: i64,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClockwiseArg {
    AgainstBoundaryOrder,
    AlongBoundaryOrder,
}

impl From<ClockwiseArg> for ClockwiseConvention {
    fn from(c: ClockwiseArg) -> Self {
        match c {
            ClockwiseArg::AgainstBoundaryOrder => ClockwiseConvention::AgainstBoundaryOrder,
            ClockwiseArg::AlongBoundaryOrder => ClockwiseConvention::AlongBoundaryOrder,
        }
    }
}

#[derive(Args, Debug, Serialize)]
pub struct ComplexArgs {
    /// Genus of the shipped standard decomposition.
    #[arg(long, conflicts_with = "complex")]
    pub genus: Option<i64>,
    /// A decomposition in PLCW JSON.
    #[arg(long)]
    pub complex: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "against-boundary-order")]
    pub clockwise: ClockwiseArg,
}

#[derive(Args, Debug, Serialize)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub r: i64,
    #[command(flatten)]
    #[serde(flatten)]
    pub complex: ComplexArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub cap: CapArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct CheckArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub complex: ComplexArgs,
    /// A marking in JSON, `{"r": …, "indices": {…}}`.
    #[arg(long, conflicts_with_all = ["r", "indices"])]
    pub marking: Option<PathBuf>,
    #[arg(long, requires = "indices")]
    pub r: Option<i64>,
    /// Comma-separated edge indices in ascending edge-id order.
    #[arg(long, requires = "r", value_delimiter = ',', allow_hyphen_values = true)]
    pub indices: Option<Vec<i64>>,
}

#[derive(Args, Debug, Serialize)]
pub struct SigmaArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub surface: SurfaceArgs,
    /// Comma-separated indices `s_{1,1},s_{1,2},…`; omit to map every
    /// admissible marking.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub indices: Option<Vec<i64>>,
    #[command(flatten)]
    #[serde(flatten)]
    pub cap: CapArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct DataArgs {
    /// A modular data file.
    #[arg(long, conflicts_with = "sample", required_unless_present = "sample")]
    pub data: Option<PathBuf>,
    /// A shipped sample: trivial, semion, z3 or z5.
    #[arg(long)]
    pub sample: Option<String>,
}

#[derive(Args, Debug, Serialize)]
pub struct ChargeArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub data: DataArgs,
    /// Label of the invertible object J.
    #[arg(long)]
    pub j: String,
    /// Restrict to the centre simple (U, V).
    #[arg(long, requires = "v")]
    pub u: Option<String>,
    #[arg(long, requires = "u")]
    pub v: Option<String>,
}

/// A failure, split by the exit status it maps to.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

fn params(a: &RankArgs) -> Result<CategoryParams, Failure> {
    let r = checked_r(a.r)?;
    CategoryParams::with_zeta_exponent(r, a.zeta_exponent).map_err(|e| Failure::Usage(e.to_string()))
}

fn checked_r(r: i64) -> Result<u32, Failure> {
    if r < 1 || r > u32::MAX as i64 {
        return usage(format!("--r must be a positive integer, got {r}"));
    }
    Ok(r as u32)
}

fn checked_genus(g: i64) -> Result<u32, Failure> {
    if g < 0 || g > u32::MAX as i64 {
        return usage(format!("--genus must be a nonnegative integer, got {g}"));
    }
    Ok(g as u32)
}

fn existing(path: &Path) -> Result<&Path, Failure> {
    if path.is_file() {
        Ok(path)
    } else {
        usage(format!("file not found: {}", path.display()))
    }
}

fn default_cap() -> Result<u128, Failure> {
    match std::env::var(CAP_ENV) {
        Ok(v) => v
            .parse()
            .map_err(|_| Failure::Usage(format!("{CAP_ENV} must be a nonnegative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

/// The cap in force and whether it was overridden on the command line.
fn cap(a: &CapArgs) -> Result<(u128, bool), Failure> {
    match a.cap {
        Some(c) => {
            eprintln!("note: brute-force size cap overridden to {c}");
            Ok((c, true))
        }
        None => Ok((default_cap()?, false)),
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serialisable")
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(existing(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Compute(Error::Parse(format!("{}: {e}", path.display()))))
}

fn complex_of(a: &ComplexArgs) -> Result<Plcw, Failure> {
    match (&a.genus, &a.complex) {
        (Some(g), None) => Ok(decomposition_for_genus(checked_genus(*g)?)),
        (None, Some(path)) => read_json(path),
        _ => usage("give exactly one of --genus or --complex"),
    }
}

fn modular_of(a: &DataArgs) -> Result<ModularData, Failure> {
    match (&a.data, &a.sample) {
        (Some(path), None) => Ok(load_modular_data(existing(path)?)?),
        (None, Some(name)) => sample(name).map_err(|e| Failure::Usage(e.to_string())),
        _ => usage("give exactly one of --data or --sample"),
    }
}

fn label(m: &ModularData, name: &str) -> Result<usize, Failure> {
    m.label_index(name).map_err(|e| Failure::Usage(e.to_string()))
}

fn marking_from_indices(complex: Plcw, r: u32, indices: &[i64]) -> Result<MarkedPlcw, Failure> {
    let ids = complex.edge_ids();
    if ids.len() != indices.len() {
        return usage(format!("expected {} edge indices, got {}", ids.len(), indices.len()));
    }
    let map = ids
        .into_iter()
        .zip(indices)
        .map(|(id, &s)| (id, s.rem_euclid(r as i64) as Grade))
        .collect();
    Ok(MarkedPlcw::new(complex, r, map)?)
}

struct Output {
    statement: &'static str,
    result: Map<String, Value>,
}

fn output(statement: &'static str, result: Value) -> Output {
    let Value::Object(result) = result else { unreachable!("results are objects") };
    Output { statement, result }
}

fn execute(cmd: &Command) -> Result<(Value, Output), Failure> {
    let inputs;
    let out = match cmd {
        Command::SnDim(a) => {
            inputs = to_value(a);
            let p = params(&a.rank)?;
            let g = checked_genus(a.genus)?;
            let hom = hom_space_basis(g, &p)?.dim;
            output(
                "closed surfaces: dim SN(Σ_g) = r^{2g} if r divides 2-2g, else 0",
                json!({
                    "r": p.r(),
                    "genus": g,
                    "dim": sn_closed_dim(&p, g)?,
                    "hom_space_dim": hom,
                    "scalar": to_value(&bp_scalar(&p, g)),
                }),
            )
        }
        Command::Sphere(a) => {
            inputs = to_value(a);
            let p = params(a)?;
            let sum = sphere_sum(&p);
            output(
                "sphere: dim SN(S^2) = 1 exactly when Σ_U dim_r(U)^2 / Dim(C) = 1",
                json!({"dim": u32::from(sum.is_one()), "sum": to_value(&sum)}),
            )
        }
        Command::TorusBasis(a) => {
            inputs = to_value(a);
            let p = params(a)?;
            let mut vectors = Vec::new();
            let mut coords = Vec::new();
            for z in list_centre_simples(&p) {
                let v = h_vector(&z, &p)?;
                coords.push(v.coords.clone());
                vectors.push(json!({"centre_simple": to_value(&z), "coords": to_value(&v.coords)}));
            }
            output(
                "torus: the vectors h_Z for simple Z in the centre form a basis of SN(T)",
                json!({"dim": coords.len(), "rank": rank_of_vectors(p.r(), &coords), "vectors": vectors}),
            )
        }
        Command::BpOperator(a) => {
            let p = params(&a.surface.rank)?;
            let g = checked_genus(a.surface.genus)?;
            let (cap, overridden) = cap(&a.cap)?;
            let mut echo = to_value(a);
            echo["cap"] = json!(cap);
            echo["cap_override"] = json!(overridden);
            inputs = echo;
            let convention = match a.convention {
                LoopArg::AnticlockwiseRight => LoopConvention::AnticlockwiseRight,
                LoopArg::ClockwiseLeft => LoopConvention::ClockwiseLeft,
            };
            let m = bp_operator_matrix(&p, g, cap, convention)?;
            let scalar = bp_scalar(&p, g);
            let equals = m == stringnet_core::linalg::Matrix::scalar_identity(&scalar, m.nrows());
            let idempotent = m.mul(&m)? == m;
            let mut result = json!({
                "dimension": m.nrows(),
                "analytic_scalar": to_value(&scalar),
                "equals_scalar_identity": equals,
                "idempotent": idempotent,
                "image_rank": m.rank(),
            });
            if a.matrix {
                result["operator_matrix"] = to_value(&m.to_dense());
            }
            output("the brute-force puncture projector acts on C(1, H^g) as (1/r) Σ_u ζ^{(2-2g)u}", result)
        }
        Command::Annulus(a) => {
            inputs = to_value(a);
            let p = params(&a.rank)?;
            let ga = p.reduce(a.a);
            let gb = p.reduce(a.b);
            output(
                "annulus: dim C(C_a, A(C_b)) = Σ_Z mult(Z, Â(C_a)) mult(Z, Â(C_b))",
                json!({"hom_dim": annulus_hom_dim(ga, gb, &p), "centre_count": annulus_centre_count(ga, gb, &p)?}),
            )
        }
        Command::RspinCount(a) => {
            inputs = to_value(a);
            let r = checked_r(a.rank.r)?;
            let g = checked_genus(a.genus)?;
            output(
                "r-spin structures on Σ_g: r^{2g} if r divides 2-2g, else none",
                json!({"count": count_rspin(g, r)}),
            )
        }
        Command::RspinEnumerate(a) => {
            let r = checked_r(a.r)?;
            let complex = complex_of(&a.complex)?;
            let (cap, overridden) = cap(&a.cap)?;
            let mut echo = to_value(a);
            echo["cap"] = json!(cap);
            echo["cap_override"] = json!(overridden);
            inputs = echo;
            let genus = complex.validate()?;
            let found = enumerate_admissible_with(&complex, r, cap, a.complex.clockwise.into())?;
            let markings: Vec<Marking> = found.iter().map(MarkedPlcw::marking).collect();
            output(
                "admissible edge-index assignments of a marked decomposition",
                json!({"genus": genus, "count": markings.len(), "expected": count_rspin(genus, r), "markings": to_value(&markings)}),
            )
        }
        Command::RspinCheck(a) => {
            inputs = to_value(a);
            let complex = complex_of(&a.complex)?;
            let marked = match (&a.marking, a.r, &a.indices) {
                (Some(path), None, None) => {
                    let m: Marking = read_json(path)?;
                    MarkedPlcw::new(complex, m.r, m.indices)?
                }
                (None, Some(r), Some(idx)) => marking_from_indices(complex, checked_r(r)?, idx)?,
                _ => return usage("give either --marking or both --r and --indices"),
            };
            let report = is_admissible_with(&marked, a.complex.clockwise.into());
            output(
                "vertex congruence Σ_e ŝ_e ≡ D_v - N_v + 1 (mod r)",
                to_value(&report),
            )
        }
        Command::SigmaF(a) => {
            let p = params(&a.surface.rank)?;
            let g = checked_genus(a.surface.genus)?;
            let (cap, overridden) = cap(&a.cap)?;
            let mut echo = to_value(a);
            echo["cap"] = json!(cap);
            echo["cap_override"] = json!(overridden);
            inputs = echo;
            let f = frobenius_zr(&p)?;
            let complex = decomposition_for_genus(g);
            let statement = "σ_F maps admissible markings to C(1, H^g); the images span a space of dimension r^{2g}";
            match &a.indices {
                Some(idx) => {
                    let m = marking_from_indices(complex, p.r(), idx)?;
                    let mut v = to_value(&sigma_f(&m, &f)?);
                    v["marking"] = to_value(&m.marking());
                    output(statement, json!({"vector": v}))
                }
                None => {
                    let markings = enumerate_admissible_with(&complex, p.r(), cap, ClockwiseConvention::default())?;
                    let images = sigma_f_all(&markings, &f)?;
                    let coords: Vec<_> = images.iter().map(|v| v.coords.clone()).collect();
                    let rank = rank_of_vectors(p.r(), &coords);
                    let vectors: Vec<Value> = images
                        .iter()
                        .zip(&markings)
                        .map(|(v, m)| {
                            let mut v = to_value(v);
                            v["marking"] = to_value(&m.marking());
                            v
                        })
                        .collect();
                    output(statement, json!({"count": vectors.len(), "rank": rank, "vectors": vectors}))
                }
            }
        }
        Command::FrobeniusCheck(a) => {
            inputs = to_value(a);
            let p = params(a)?;
            let f = frobenius_zr(&p)?;
            let axioms = f.check_axioms()?;
            let nk = nakayama(&f)?;
            let diagonal: Vec<CycNum> = (0..f.object.dim()).map(|i| nk.n.matrix().get(i, i)).collect();
            let order = (1..=p.r() as i64)
                .find(|&k| nakayama_power(&f, k) == stringnet_core::graded_category::GradedMorphism::identity(&f.object))
                .unwrap_or(0);
            output(
                "CZ_r is a Δ-separable Frobenius algebra with Nakayama automorphism N(1_a) = ζ^{-a} 1_a",
                json!({
                    "axioms": to_value(&axioms),
                    "all_hold": axioms.iter().all(|c| c.holds),
                    "nakayama_diagonal": to_value(&diagonal),
                    "nakayama_matches_closed_form": nk.n == nakayama_power(&f, 1),
                    "nakayama_order": order,
                }),
            )
        }
        Command::Charge(a) => {
            inputs = to_value(a);
            let m = modular_of(&a.data)?;
            let j = label(&m, &a.j)?;
            let dims = deformed_dims(j, &m)?;
            let statement = "one-point sphere: SN(S^2(U,V)) is one-dimensional exactly for (U,V) = (J⊗J, (J⊗J)^∨)";
            match (&a.u, &a.v) {
                (Some(u), Some(v)) => {
                    let (u, v) = (label(&m, u)?, label(&m, v)?);
                    output(
                        statement,
                        json!({
                            "dim": sphere_charge_dim(j, u, v, &m)?,
                            "value": to_value(&charge_value(j, u, &m)?),
                            "is_spherical": dims.is_spherical,
                        }),
                    )
                }
                _ => {
                    let mut support = Vec::new();
                    for u in 0..m.rank() {
                        for v in 0..m.rank() {
                            if sphere_charge_dim(j, u, v, &m)? == 1 {
                                support.push(json!({"u": m.labels[u], "v": m.labels[v]}));
                            }
                        }
                    }
                    output(
                        statement,
                        json!({
                            "support": support,
                            "is_spherical": dims.is_spherical,
                            "dim_l": to_value(&dims.dim_l),
                            "dim_r": to_value(&dims.dim_r),
                        }),
                    )
                }
            }
        }
        Command::ValidateModular(a) => {
            inputs = to_value(a);
            let loaded = match (&a.data, &a.sample) {
                (Some(path), None) => load_modular_data(existing(path)?),
                _ => modular_of(a).map_err(|e| match e {
                    Failure::Compute(e) => e,
                    Failure::Usage(m) => Error::Domain(m),
                }),
            };
            match loaded {
                Ok(m) => output(
                    "modular data invariants: symmetry, unit column, orthogonality and nondegeneracy of s",
                    json!({"valid": true, "violations": [], "rank": m.rank(), "global_dim": to_value(&m.global_dim)}),
                ),
                Err(Error::Validation(v)) => output(
                    "modular data invariants: symmetry, unit column, orthogonality and nondegeneracy of s",
                    json!({"valid": false, "violations": v}),
                ),
                Err(e) => return Err(Failure::Compute(e)),
            }
        }
    };
    Ok((inputs, out))
}

fn is_cycnum(map: &Map<String, Value>) -> bool {
    map.len() == 2 && map.contains_key("order") && map.contains_key("coeffs")
}

/// Adds a `"decimal"` rendering next to every exact cyclotomic number.
fn add_decimals(v: &mut Value) {
    match v {
        Value::Object(map) => {
            if is_cycnum(map) {
                if let Ok(x) = serde_json::from_value::<CycNum>(Value::Object(map.clone())) {
                    let (re, im) = x.to_complex();
                    map.insert("decimal".into(), json!(format!("{re:.12} {:+.12}i", im)));
                }
            } else {
                map.values_mut().for_each(add_decimals);
            }
        }
        Value::Array(items) => items.iter_mut().for_each(add_decimals),
        _ => {}
    }
}

fn error_json(kind: &str, message: &str) -> String {
    serde_json::to_string_pretty(&json!({"error": {"kind": kind, "message": message}})).expect("serialisable")
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Domain(_) => "domain",
        Error::Invariant(_) => "invariant",
        Error::Diagram { .. } => "diagram",
        Error::SizeCap { .. } => "size-cap",
        Error::Parse(_) => "parse",
        Error::Validation(_) => "validation",
    }
}

/// Runs the CLI on `argv` and returns the exit status and standard output.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (0, e.to_string()),
                _ => (2, error_json("usage", e.render().to_string().trim())),
            };
        }
    };
    if let Some(name) = &cli.json_schema {
        return match schemas::schema_text(name) {
            Some(text) => (0, text),
            None => (2, error_json("usage", &format!("no schema named {name:?}"))),
        };
    }
    let Some(cmd) = cli.command else {
        return (2, error_json("usage", "a subcommand is required; see --help"));
    };
    match execute(&cmd) {
        Ok((inputs, out)) => {
            let mut doc = Map::new();
            doc.insert("command".into(), json!(cmd.name()));
            let inputs = match inputs {
                Value::Object(m) => Value::Object(m.into_iter().filter(|(_, v)| !v.is_null()).collect()),
                other => other,
            };
            doc.insert("inputs".into(), inputs);
            doc.insert("statement".into(), json!(out.statement));
            doc.extend(out.result);
            let mut doc = Value::Object(doc);
            if cli.decimal {
                add_decimals(&mut doc);
            }
            let failed = doc.get("valid") == Some(&Value::Bool(false));
            (i32::from(failed), serde_json::to_string_pretty(&doc).expect("serialisable"))
        }
        Err(Failure::Usage(m)) => (2, error_json("usage", &m)),
        Err(Failure::Compute(e)) => (1, error_json(error_kind(&e), &e.to_string())),
    }
}
