//! Finite generator lists of ideals of `Q[x, y]`.

use crate::bpoly::BPoly;
use crate::error::AlgebraError;
use crate::parse::parse_poly;

/// Generators of an ideal, with the common monomial factor `x^a y^b` split off.
///
/// The ideal described is `x^a y^b · (generators)`. After normalization no
/// generator is zero and the generators have no common monomial factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdealGens {
    generators: Vec<BPoly>,
    content: (u32, u32),
}

impl IdealGens {
    /// Normalizes a generator list: drops zero generators and extracts the
    /// common monomial content.
    pub fn new(gens: Vec<BPoly>) -> Result<Self, AlgebraError> {
        let gens: Vec<BPoly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        if gens.is_empty() {
            return Err(AlgebraError::EmptyIdeal);
        }
        let a = gens.iter().map(BPoly::x_content).min().expect("nonempty");
        let b = gens.iter().map(BPoly::y_content).min().expect("nonempty");
        let generators = gens.iter().map(|g| g.div_monomial(a, b)).collect();
        Ok(IdealGens {
            generators,
            content: (a, b),
        })
    }

    /// Parses generator expressions, one per item.
    pub fn from_strs(gens: &[&str]) -> Result<Self, AlgebraError> {
        IdealGens::new(
            gens.iter()
                .map(|s| parse_poly(s))
                .collect::<Result<_, _>>()?,
        )
    }

    /// Content-free generators.
    pub fn generators(&self) -> &[BPoly] {
        &self.generators
    }

    /// The extracted monomial content `(a, b)` of `x^a y^b`.
    pub fn content(&self) -> (u32, u32) {
        self.content
    }

    /// Generators with the monomial content multiplied back in.
    pub fn full_generators(&self) -> Vec<BPoly> {
        let (a, b) = self.content;
        self.generators
            .iter()
            .map(|g| g.mul_monomial(a, b))
            .collect()
    }

    /// Product ideal, generated by all pairwise products.
    pub fn product(&self, other: &IdealGens) -> IdealGens {
        let mut gens = Vec::new();
        for f in self.full_generators() {
            for g in other.full_generators() {
                gens.push(f.mul(&g));
            }
        }
        IdealGens::new(gens).expect("product of nonzero ideals is nonzero")
    }

    /// Multiplies every generator by `f`.
    pub fn times_poly(&self, f: &BPoly) -> Result<IdealGens, AlgebraError> {
        IdealGens::new(self.full_generators().iter().map(|g| g.mul(f)).collect())
    }

    /// True when every generator, content included, is a monomial.
    pub fn is_monomial(&self) -> bool {
        self.generators.iter().all(BPoly::is_monomial)
    }

    /// True when some generator does not vanish at the origin, so the ideal
    /// is the whole local ring.
    pub fn is_unit(&self) -> bool {
        self.content == (0, 0) && self.generators.iter().any(|g| !g.vanishes_at_origin())
    }
}

/// Parses an ideal file: one generator per line, blank lines and text after
/// `#` ignored. Syntax errors report the byte offset within the whole file.
pub fn parse_ideal(text: &str) -> Result<IdealGens, AlgebraError> {
    let mut gens = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let body = line.split('#').next().unwrap_or("");
        if !body.trim().is_empty() {
            let g = parse_poly(body).map_err(|e| match e {
                AlgebraError::Syntax { offset: o, message } => AlgebraError::Syntax {
                    offset: offset + o,
                    message,
                },
                other => other,
            })?;
            gens.push(g);
        }
        offset += line.len();
    }
    IdealGens::new(gens)
}
