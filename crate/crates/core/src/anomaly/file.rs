//! Embedding file:
//!
//! ```json
//! { "domain": "sl3", "target_size": 3,
//!   "T_L": [ ... one matrix per domain basis element ... ],
//!   "T_R": [ ... ] }
//! ```
//!
//! `domain` is a classical name (`"sl3"`, `"so(3)"`), an inline algebra
//! object in the format of [`AlgebraFile`], or a path ending in `.json` to
//! such a file, resolved against the embedding file's directory. `T_R` may
//! be omitted for the zero map. `special_linear` defaults to `true` and
//! demands traceless images.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::exact::ExactMatrix;
use crate::liealg::{AlgebraFile, LieError, MatrixLieAlgebra, MatrixLiteral};

use super::{AnomalyError, GaugeEmbedding, Side};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DomainSpec {
    Name(String),
    Inline(AlgebraFile),
}

impl DomainSpec {
    pub fn resolve(&self, base_dir: Option<&Path>) -> Result<MatrixLieAlgebra, AnomalyError> {
        match self {
            DomainSpec::Inline(file) => Ok(file.build()?),
            DomainSpec::Name(name) if name.ends_with(".json") => {
                let path = base_dir.map_or_else(|| Path::new(name).to_path_buf(), |d| d.join(name));
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| LieError::Invalid(format!("{}: {e}", path.display())))?;
                let file: AlgebraFile = serde_json::from_str(&text)
                    .map_err(|e| LieError::Invalid(format!("{}: {e}", path.display())))?;
                Ok(file.build()?)
            }
            DomainSpec::Name(name) => Ok(MatrixLieAlgebra::from_spec(name)?),
        }
    }
}

fn default_true() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingFile {
    pub domain: DomainSpec,
    pub target_size: usize,
    #[serde(rename = "T_L")]
    pub t_left: Vec<MatrixLiteral>,
    #[serde(rename = "T_R", default, skip_serializing_if = "Option::is_none")]
    pub t_right: Option<Vec<MatrixLiteral>>,
    #[serde(default = "default_true")]
    pub special_linear: bool,
}

impl EmbeddingFile {
    pub fn build(&self, base_dir: Option<&Path>) -> Result<GaugeEmbedding, AnomalyError> {
        let domain = self.domain.resolve(base_dir)?;
        let n = self.target_size;
        let convert = |side: Side, lits: &[MatrixLiteral]| -> Result<Vec<ExactMatrix>, AnomalyError> {
            lits.iter()
                .enumerate()
                .map(|(i, m)| {
                    m.to_matrix(n).map_err(|e| {
                        let detail = match e {
                            LieError::Invalid(msg) => msg,
                            other => other.to_string(),
                        };
                        LieError::Invalid(format!("T_{side}[{i}]: {detail}")).into()
                    })
                })
                .collect()
        };
        let t_left = convert(Side::Left, &self.t_left)?;
        let t_right = match &self.t_right {
            Some(lits) => convert(Side::Right, lits)?,
            None => vec![ExactMatrix::zeros(n, n); domain.dim()],
        };
        GaugeEmbedding::new(domain, n, t_left, t_right, self.special_linear)
    }

    pub fn describe(emb: &GaugeEmbedding, domain: DomainSpec) -> Self {
        let lit = |ts: &[ExactMatrix]| ts.iter().map(MatrixLiteral::from_matrix).collect();
        EmbeddingFile {
            domain,
            target_size: emb.target_size(),
            t_left: lit(emb.t_left()),
            t_right: Some(lit(emb.t_right())),
            special_linear: emb.special_linear(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_domain_left_only() {
        let text = r#"{ "domain": "sl2", "target_size": 2,
            "T_L": [["1","0","0","-1"], ["0","1","0","0"], ["0","0","1","0"]] }"#;
        let file: EmbeddingFile = serde_json::from_str(text).unwrap();
        let emb = file.build(None).unwrap();
        assert!(emb.t_right().iter().all(ExactMatrix::is_zero));
        assert!(!emb.anomaly_form().anomaly_free);
    }

    #[test]
    fn roundtrip_with_inline_domain() {
        let sl2 = MatrixLieAlgebra::from_spec("sl2").unwrap();
        let emb = GaugeEmbedding::adjoint(sl2.clone()).unwrap();
        let file = EmbeddingFile::describe(&emb, DomainSpec::Inline(AlgebraFile::describe(&sl2)));
        let text = serde_json::to_string(&file).unwrap();
        let back: EmbeddingFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.build(None).unwrap(), emb);
    }

    #[test]
    fn malformed_row_is_rejected() {
        let text = r#"{ "domain": "sl2", "target_size": 2,
            "T_L": [["1","0","0"], ["0","1","0","0"], ["0","0","1","0"]] }"#;
        let file: EmbeddingFile = serde_json::from_str(text).unwrap();
        let err = file.build(None).unwrap_err();
        assert!(err.to_string().contains("T_L[0]"), "{err}");
    }

    #[test]
    fn unknown_field_is_rejected() {
        let text = r#"{ "domain": "sl2", "target_size": 2, "T_L": [], "extra": 1 }"#;
        assert!(serde_json::from_str::<EmbeddingFile>(text).is_err());
    }
}
