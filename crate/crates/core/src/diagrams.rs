//! Planar string diagrams given as stacks of layers.
//!
//! Diagrams are read from bottom to top. Each layer is a row of generators
//! placed side by side; the matrix of a layer is the Kronecker product of
//! the matrices of its generators, and the value of a diagram is the
//! composite of its layers.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::graded_category::{
    coev_left, coev_right, ev_left, ev_right, CategoryParams, GradedMorphism, GradedObject,
};

/// A single generator of a slice diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    /// A vertical identity strand on the given object.
    Identity(GradedObject),
    /// `evL_X : X^∨ ⊗ X → 1`.
    CapLeft(GradedObject),
    /// `evR_X : X ⊗ X^∨ → 1`.
    CapRight(GradedObject),
    /// `coevL_X : 1 → X ⊗ X^∨`.
    CupLeft(GradedObject),
    /// `coevR_X : 1 → X^∨ ⊗ X`.
    CupRight(GradedObject),
    /// An arbitrary morphism.
    Box(GradedMorphism),
}

impl Generator {
    /// The object consumed at the bottom of the generator.
    pub fn input(&self) -> GradedObject {
        match self {
            Generator::Identity(x) => x.clone(),
            Generator::CapLeft(x) => x.dual().tensor(x),
            Generator::CapRight(x) => x.tensor(&x.dual()),
            Generator::CupLeft(x) | Generator::CupRight(x) => GradedObject::unit(x.r()),
            Generator::Box(f) => f.source().clone(),
        }
    }

    /// The object produced at the top of the generator.
    pub fn output(&self) -> GradedObject {
        match self {
            Generator::Identity(x) => x.clone(),
            Generator::CapLeft(x) | Generator::CapRight(x) => GradedObject::unit(x.r()),
            Generator::CupLeft(x) => x.tensor(&x.dual()),
            Generator::CupRight(x) => x.dual().tensor(x),
            Generator::Box(f) => f.target().clone(),
        }
    }

    /// The morphism the generator denotes.
    pub fn morphism(&self, params: &CategoryParams) -> Result<GradedMorphism> {
        match self {
            Generator::Identity(x) => Ok(GradedMorphism::identity(x)),
            Generator::CapLeft(x) => ev_left(x, params),
            Generator::CapRight(x) => ev_right(x, params),
            Generator::CupLeft(x) => coev_left(x, params),
            Generator::CupRight(x) => coev_right(x, params),
            Generator::Box(f) => Ok(f.clone()),
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Generator::Identity(_) => "identity",
            Generator::CapLeft(_) => "cap_left",
            Generator::CapRight(_) => "cap_right",
            Generator::CupLeft(_) => "cup_left",
            Generator::CupRight(_) => "cup_right",
            Generator::Box(_) => "box",
        }
    }
}

/// A layered planar diagram from `bottom` to the output of the last layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceDiagram {
    r: u32,
    bottom: GradedObject,
    layers: Vec<Vec<Generator>>,
}

impl SliceDiagram {
    /// A diagram with the given bottom boundary and layers.
    pub fn new(bottom: GradedObject, layers: Vec<Vec<Generator>>) -> Self {
        SliceDiagram {
            r: bottom.r(),
            bottom,
            layers,
        }
    }

    /// A closed-bottom diagram, starting from the tensor unit.
    pub fn from_unit(r: u32, layers: Vec<Vec<Generator>>) -> Self {
        Self::new(GradedObject::unit(r), layers)
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn bottom(&self) -> &GradedObject {
        &self.bottom
    }

    pub fn layers(&self) -> &[Vec<Generator>] {
        &self.layers
    }

    /// Checks layer typing and returns the top boundary.
    pub fn boundary_top(&self) -> Result<GradedObject> {
        let mut current = self.bottom.clone();
        for (i, layer) in self.layers.iter().enumerate() {
            let input = layer_input(self.r, layer);
            if input != current {
                return Err(mismatch(i, &current, &input));
            }
            current = layer_output(self.r, layer);
        }
        Ok(current)
    }

    /// Evaluates the diagram to a morphism `bottom → top`.
    pub fn evaluate(&self, params: &CategoryParams) -> Result<GradedMorphism> {
        if params.r() != self.r {
            return Err(Error::Domain(format!(
                "diagram lives in C_{} but parameters are for C_{}",
                self.r,
                params.r()
            )));
        }
        let mut acc = GradedMorphism::identity(&self.bottom);
        for (i, layer) in self.layers.iter().enumerate() {
            let input = layer_input(self.r, layer);
            if &input != acc.target() {
                return Err(mismatch(i, acc.target(), &input));
            }
            let mut m = GradedMorphism::identity(&GradedObject::unit(self.r));
            for g in layer {
                m = m
                    .tensor(&g.morphism(params)?)
                    .map_err(|e| Error::Diagram {
                        layer: i,
                        message: e.to_string(),
                    })?;
            }
            acc = m.compose(&acc)?;
        }
        Ok(acc)
    }
}

fn layer_input(r: u32, layer: &[Generator]) -> GradedObject {
    layer
        .iter()
        .fold(GradedObject::unit(r), |acc, g| acc.tensor(&g.input()))
}

fn layer_output(r: u32, layer: &[Generator]) -> GradedObject {
    layer
        .iter()
        .fold(GradedObject::unit(r), |acc, g| acc.tensor(&g.output()))
}

fn mismatch(layer: usize, found: &GradedObject, expected: &GradedObject) -> Error {
    Error::Diagram {
        layer,
        message: format!("layer expects {expected} but receives {found}"),
    }
}

/// Incremental construction of slice diagrams: each call adds one layer in
/// which a single generator acts on a contiguous range of factors and every
/// other factor is carried by identity strands.
#[derive(Clone, Debug)]
pub struct DiagramBuilder {
    current: GradedObject,
    bottom: GradedObject,
    layers: Vec<Vec<Generator>>,
}

impl DiagramBuilder {
    pub fn new(bottom: GradedObject) -> Self {
        DiagramBuilder {
            current: bottom.clone(),
            bottom,
            layers: Vec::new(),
        }
    }

    pub fn from_unit(r: u32) -> Self {
        Self::new(GradedObject::unit(r))
    }

    /// The object at the current top of the diagram.
    pub fn current(&self) -> &GradedObject {
        &self.current
    }

    /// Number of tensor factors at the current top.
    pub fn width(&self) -> usize {
        self.current.num_factors()
    }

    /// Places `gen` on the factors starting at position `pos`.
    pub fn apply(&mut self, pos: usize, gen: Generator) -> Result<&mut Self> {
        let layer_index = self.layers.len();
        let input = gen.input();
        let k = input.num_factors();
        if pos + k > self.width() {
            return Err(Error::Diagram {
                layer: layer_index,
                message: format!(
                    "generator needs factors {pos}..{} but only {} are present",
                    pos + k,
                    self.width()
                ),
            });
        }
        let found = self.current.slice(pos, pos + k);
        if found != input {
            return Err(mismatch(layer_index, &found, &input));
        }
        let left = self.current.slice(0, pos);
        let right = self.current.slice(pos + k, self.width());
        let mut layer = Vec::with_capacity(3);
        if !left.is_unit() {
            layer.push(Generator::Identity(left.clone()));
        }
        let output = gen.output();
        layer.push(gen);
        if !right.is_unit() {
            layer.push(Generator::Identity(right.clone()));
        }
        self.current = left.tensor(&output).tensor(&right);
        self.layers.push(layer);
        Ok(self)
    }

    /// Places a generator whose input is the tensor unit at the far right.
    pub fn append(&mut self, gen: Generator) -> Result<&mut Self> {
        let w = self.width();
        self.apply(w, gen)
    }

    /// Adds a full layer given explicitly.
    pub fn layer(&mut self, layer: Vec<Generator>) -> Result<&mut Self> {
        let r = self.current.r();
        let input = layer_input(r, &layer);
        if input != self.current {
            return Err(mismatch(self.layers.len(), &self.current, &input));
        }
        self.current = layer_output(r, &layer);
        self.layers.push(layer);
        Ok(self)
    }

    pub fn build(&self) -> SliceDiagram {
        SliceDiagram::new(self.bottom.clone(), self.layers.clone())
    }

    pub fn evaluate(&self, params: &CategoryParams) -> Result<GradedMorphism> {
        self.build().evaluate(params)
    }
}

/// Orientation of a closed loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Clockwise,
    Anticlockwise,
}

/// Value of a small closed loop labelled `C_u`, obtained by evaluating the
/// two-generator diagram.
pub fn loop_value(u: i64, orientation: Orientation, params: &CategoryParams) -> Result<CycNum> {
    let x = GradedObject::simple(params.r(), u);
    let layers = match orientation {
        Orientation::Clockwise => vec![vec![Generator::CupLeft(x.clone())], vec![Generator::CapRight(x)]],
        Orientation::Anticlockwise => {
            vec![vec![Generator::CupRight(x.clone())], vec![Generator::CapLeft(x)]]
        }
    };
    let value = SliceDiagram::from_unit(params.r(), layers).evaluate(params)?;
    Ok(value.matrix().get(0, 0))
}

#[derive(Serialize, Deserialize)]
struct GeneratorRepr {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    grade_list: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    object: Option<GradedObject>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    morphism: Option<GradedMorphism>,
}

#[derive(Serialize, Deserialize)]
struct DiagramRepr {
    r: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bottom: Option<GradedObject>,
    layers: Vec<Vec<GeneratorRepr>>,
}

impl Serialize for SliceDiagram {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let layers = self
            .layers
            .iter()
            .map(|layer| {
                layer
                    .iter()
                    .map(|g| {
                        let mut repr = GeneratorRepr {
                            kind: g.kind().to_string(),
                            grade_list: None,
                            object: None,
                            morphism: None,
                        };
                        match g {
                            Generator::Box(f) => repr.morphism = Some(f.clone()),
                            Generator::Identity(x)
                            | Generator::CapLeft(x)
                            | Generator::CapRight(x)
                            | Generator::CupLeft(x)
                            | Generator::CupRight(x) => match x.as_word() {
                                Some(w) => repr.grade_list = Some(w.0),
                                None => repr.object = Some(x.clone()),
                            },
                        }
                        repr
                    })
                    .collect()
            })
            .collect();
        DiagramRepr {
            r: self.r,
            bottom: (!self.bottom.is_unit()).then(|| self.bottom.clone()),
            layers,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SliceDiagram {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = DiagramRepr::deserialize(d)?;
        let r = repr.r;
        if r == 0 {
            return Err(D::Error::custom("r must be at least 1"));
        }
        let mut layers = Vec::with_capacity(repr.layers.len());
        for layer in repr.layers {
            let mut gens = Vec::with_capacity(layer.len());
            for g in layer {
                if g.kind == "box" {
                    let f = g
                        .morphism
                        .ok_or_else(|| D::Error::custom("box generator needs a morphism"))?;
                    gens.push(Generator::Box(f));
                    continue;
                }
                let x = match (g.grade_list, g.object) {
                    (Some(gl), None) => {
                        if let Some(bad) = gl.iter().find(|&&u| u >= r) {
                            return Err(D::Error::custom(format!("grade {bad} out of range")));
                        }
                        GradedObject::word(r, &gl.iter().map(|&u| u as i64).collect::<Vec<_>>())
                    }
                    (None, Some(o)) => o,
                    _ => {
                        return Err(D::Error::custom(
                            "generator needs exactly one of grade_list or object",
                        ))
                    }
                };
                gens.push(match g.kind.as_str() {
                    "identity" => Generator::Identity(x),
                    "cap_left" => Generator::CapLeft(x),
                    "cap_right" => Generator::CapRight(x),
                    "cup_left" => Generator::CupLeft(x),
                    "cup_right" => Generator::CupRight(x),
                    other => {
                        return Err(D::Error::custom(format!("unknown generator kind {other}")))
                    }
                });
            }
            layers.push(gens);
        }
        let bottom = repr.bottom.unwrap_or_else(|| GradedObject::unit(r));
        Ok(SliceDiagram::new(bottom, layers))
    }
}
