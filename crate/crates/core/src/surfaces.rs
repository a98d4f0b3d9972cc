//! Oriented surfaces and the embeddings between them, each resolved to its
//! compactly supported first cohomology with the intersection pairing.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::presymplectic::{GroupHom, PresymplecticGroup};

/// A connected oriented surface of genus `genus` with `punctures` points removed.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Surface {
    pub genus: usize,
    pub punctures: usize,
    pub name: Option<String>,
}

impl Surface {
    pub fn new(genus: usize, punctures: usize) -> Self {
        Surface {
            genus,
            punctures,
            name: None,
        }
    }

    pub fn sphere() -> Self {
        Surface {
            name: Some("S2".into()),
            ..Surface::new(0, 0)
        }
    }

    pub fn torus() -> Self {
        Surface {
            name: Some("T2".into()),
            ..Surface::new(1, 0)
        }
    }

    /// `R × T`, a sphere with two punctures.
    pub fn cylinder() -> Self {
        Surface {
            name: Some("cylinder".into()),
            ..Surface::new(0, 2)
        }
    }

    pub fn is_compact(&self) -> bool {
        self.punctures == 0
    }

    pub fn rank(&self) -> usize {
        match self.punctures {
            0 => 2 * self.genus,
            p => 2 * self.genus + p - 1,
        }
    }

    /// Symplectic blocks on the first `2g` coordinates, zero pairing on the
    /// `p − 1` puncture coordinates.
    pub fn resolve(&self) -> PresymplecticGroup {
        PresymplecticGroup::standard_symplectic(self.genus, self.rank() - 2 * self.genus)
    }

    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(name) => write!(f, "{name}"),
            None => write!(f, "genus={},punctures={}", self.genus, self.punctures),
        }
    }
}

impl FromStr for Surface {
    type Err = Error;

    /// Accepts `S2`, `T2`, `cylinder`, or `genus=<g>,punctures=<p>`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        match compact.as_str() {
            "S2" => return Ok(Surface::sphere()),
            "T2" => return Ok(Surface::torus()),
            "cylinder" => return Ok(Surface::cylinder()),
            _ => {}
        }
        let mut genus = None;
        let mut punctures = None;
        for part in compact.split(',') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Malformed(format!("unrecognised surface `{s}`")))?;
            let value: usize = value
                .parse()
                .map_err(|_| Error::Malformed(format!("bad count `{value}` in surface `{s}`")))?;
            let slot = match key {
                "genus" => &mut genus,
                "punctures" => &mut punctures,
                _ => return Err(Error::Malformed(format!("unknown surface key `{key}`"))),
            };
            if slot.replace(value).is_some() {
                return Err(Error::Malformed(format!("duplicate key `{key}`")));
            }
        }
        match (genus, punctures) {
            (Some(g), Some(p)) => Ok(Surface::new(g, p)),
            _ => Err(Error::Malformed(format!(
                "surface `{s}` needs both genus and punctures"
            ))),
        }
    }
}

/// An orientation preserving open embedding, recorded through its
/// pushforward on compactly supported cohomology.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EmbeddingSpec {
    pub source: Surface,
    pub target: Surface,
    pub hom: GroupHom,
}

impl EmbeddingSpec {
    pub fn new(source: Surface, target: Surface, matrix: IntMatrix) -> Result<Self> {
        let hom = GroupHom::new(source.resolve(), target.resolve(), matrix)?;
        Ok(EmbeddingSpec {
            source,
            target,
            hom,
        })
    }

    pub fn identity(surface: &Surface) -> Self {
        EmbeddingSpec {
            source: surface.clone(),
            target: surface.clone(),
            hom: GroupHom::identity(&surface.resolve()),
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &EmbeddingSpec) -> Result<Self> {
        if inner.target != self.source {
            return Err(Error::Malformed(format!(
                "cannot compose {} → {} after {} → {}",
                self.source, self.target, inner.source, inner.target
            )));
        }
        Ok(EmbeddingSpec {
            source: inner.source.clone(),
            target: self.target.clone(),
            hom: self.hom.compose(&inner.hom)?,
        })
    }
}

/// Names of the embeddings the catalog knows how to build.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EmbeddingName {
    CylIntoSphere,
    CylIntoTorus,
    /// A mapping class of the torus acting through `T ∈ SL(2, Z)`.
    TorusAuto([[i64; 2]; 2]),
}

impl FromStr for EmbeddingName {
    type Err = Error;

    /// `cyl_into_sphere`, `cyl_into_torus`, or `torus_auto(a,b;c,d)`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        match compact.as_str() {
            "cyl_into_sphere" => return Ok(EmbeddingName::CylIntoSphere),
            "cyl_into_torus" => return Ok(EmbeddingName::CylIntoTorus),
            _ => {}
        }
        let body = compact
            .strip_prefix("torus_auto(")
            .and_then(|rest| rest.strip_suffix(')'))
            .ok_or_else(|| Error::UnknownEmbedding(s.to_string()))?;
        let entries: Vec<i64> = body
            .split([',', ';'])
            .map(|x| x.parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Malformed(format!("bad torus_auto matrix `{body}`")))?;
        match entries[..] {
            [a, b, c, d] => Ok(EmbeddingName::TorusAuto([[a, b], [c, d]])),
            _ => Err(Error::Malformed(format!(
                "torus_auto needs four entries, got {}",
                entries.len()
            ))),
        }
    }
}

pub fn catalog_embedding(name: &EmbeddingName) -> Result<EmbeddingSpec> {
    match name {
        EmbeddingName::CylIntoSphere => {
            EmbeddingSpec::new(Surface::cylinder(), Surface::sphere(), IntMatrix::zeros(0, 1))
        }
        EmbeddingName::CylIntoTorus => EmbeddingSpec::new(
            Surface::cylinder(),
            Surface::torus(),
            IntMatrix::from_column(&[1, 0]),
        ),
        EmbeddingName::TorusAuto(t) => {
            let matrix = IntMatrix::from_2x2(*t);
            let det = matrix.det()?;
            if det != 1 {
                return Err(Error::NotOrientationPreserving { det });
            }
            EmbeddingSpec::new(Surface::torus(), Surface::torus(), matrix)
        }
    }
}

pub fn catalog_embedding_named(name: &str) -> Result<EmbeddingSpec> {
    catalog_embedding(&name.parse()?)
}
