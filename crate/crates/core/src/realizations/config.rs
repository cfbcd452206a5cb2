//! TOML realization files.
//!
//! ```toml
//! name = "custom"
//! kind = "type1"          # type1 | type2 | vector_like | linear | explicit | catalog
//! dimension = 4
//! order = 3
//!
//! # type1 / type2: Taylor table of φ(A, B); vector_like: of f(B)
//! taylor = [ { a = 0, b = 0, value = "1" }, { a = 1, b = 0, value = "-1" } ]
//!
//! # linear
//! alpha = "-1"
//! beta = "0"
//! gamma = "0"
//!
//! # explicit: φ[α][μ] as expressions in a and d
//! phi = [["-1 + i*a.d", "0"], ["0", "1 - i*a.d"]]
//!
//! # catalog
//! catalog = "left"
//! ```

use std::path::Path;

use serde::Deserialize;

use crate::algebra::{Ctx, GaussRat, Rat, ScalarSeries2};
use crate::error::{KappaError, Result};
use crate::frontend::expr::parse_poly;

use super::{build_linear, build_type1, build_type2, build_vector_like, catalog, Realization};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealizationFile {
    pub name: Option<String>,
    pub kind: String,
    pub dimension: Option<usize>,
    pub order: Option<usize>,
    #[serde(default)]
    pub taylor: Vec<TaylorEntry>,
    pub alpha: Option<String>,
    pub beta: Option<String>,
    pub gamma: Option<String>,
    pub phi: Option<Vec<Vec<String>>>,
    pub catalog: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaylorEntry {
    #[serde(default)]
    pub a: usize,
    #[serde(default)]
    pub b: usize,
    pub value: String,
}

fn rat(field: &str, v: &Option<String>) -> Result<Rat> {
    let s = v.as_deref().ok_or_else(|| KappaError::Config(format!("missing `{field}`")))?;
    s.trim().parse::<Rat>().map_err(|e| KappaError::Config(format!("`{field}`: {e}")))
}

impl RealizationFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| KappaError::Config(e.to_string()))
    }

    /// Context from the file, with command-line overrides taking precedence.
    pub fn ctx(&self, dim: Option<usize>, order: Option<usize>) -> Result<Ctx> {
        Ctx::new(dim.or(self.dimension).unwrap_or(4), order.or(self.order).unwrap_or(3))
    }

    fn series(&self, ctx: Ctx) -> Result<ScalarSeries2> {
        if self.taylor.is_empty() {
            return Err(KappaError::Config("missing `taylor` table".into()));
        }
        let mut entries = Vec::new();
        for t in &self.taylor {
            let c: GaussRat = t.value.parse()?;
            entries.push((t.a, t.b, c));
        }
        Ok(ScalarSeries2::from_table(&entries, ctx.order + 2))
    }

    pub fn build(&self, ctx: Ctx) -> Result<Realization> {
        let r = match self.kind.as_str() {
            "type1" => build_type1(ctx, &self.series(ctx)?)?,
            "type2" => build_type2(ctx, &self.series(ctx)?)?,
            "vector_like" => build_vector_like(ctx, &self.series(ctx)?)?,
            "linear" => build_linear(ctx, rat("alpha", &self.alpha)?, rat("beta", &self.beta)?, rat("gamma", &self.gamma)?)?,
            "catalog" => {
                let name = self.catalog.as_deref().ok_or_else(|| KappaError::Config("missing `catalog`".into()))?;
                catalog(name, ctx)?
            }
            "explicit" => {
                let rows = self.phi.as_ref().ok_or_else(|| KappaError::Config("missing `phi`".into()))?;
                let mut phi = Vec::with_capacity(rows.len());
                for (al, row) in rows.iter().enumerate() {
                    let mut out = Vec::with_capacity(row.len());
                    for (mu, src) in row.iter().enumerate() {
                        out.push(parse_poly(ctx, src).map_err(|e| KappaError::Config(format!("phi[{al}][{mu}]: {e}")))?);
                    }
                    phi.push(out);
                }
                Realization::explicit("explicit", ctx, phi)?
            }
            other => return Err(KappaError::Config(format!("unknown realization kind `{other}`"))),
        };
        Ok(match &self.name {
            Some(n) => r.with_name(n),
            None => r,
        })
    }
}

pub fn load(path: &Path, dim: Option<usize>, order: Option<usize>) -> Result<Realization> {
    let text = std::fs::read_to_string(path).map_err(|e| KappaError::Config(format!("{}: {e}", path.display())))?;
    let file = RealizationFile::parse(&text)?;
    let ctx = file.ctx(dim, order)?;
    file.build(ctx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn taylor_file_matches_catalog() {
        let text = r#"
            kind = "type1"
            dimension = 2
            order = 2
            taylor = [ { a = 0, b = 0, value = "1" }, { a = 1, value = "-1" } ]
        "#;
        let f = RealizationFile::parse(text).unwrap();
        let ctx = f.ctx(None, None).unwrap();
        assert_eq!(f.build(ctx).unwrap(), catalog("left", ctx).unwrap());
    }

    #[test]
    fn explicit_file() {
        let text = r#"
            kind = "explicit"
            dimension = 2
            order = 1
            phi = [["-1 + i*a.d", "0"], ["0", "1 - i*a.d"]]
        "#;
        let f = RealizationFile::parse(text).unwrap();
        let ctx = f.ctx(None, None).unwrap();
        let r = f.build(ctx).unwrap();
        assert_eq!(r, catalog("left", ctx).unwrap());
    }

    #[test]
    fn bad_files() {
        assert!(RealizationFile::parse("kind = 3").is_err());
        let f = RealizationFile::parse("kind = \"linear\"\nalpha = \"0\"\nbeta = \"0\"\ngamma = \"0\"").unwrap();
        let ctx = f.ctx(Some(2), Some(1)).unwrap();
        assert!(matches!(f.build(ctx), Err(KappaError::ConstraintViolated(_))));
    }
}
