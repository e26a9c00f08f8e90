//! JSON tensor files: `{"dims":[n1,n2,n3],"entries":[[i,j,k,"v"],...]}` with
//! zero-based indices, values as `"n"` or `"a/b"`, omitted entries zero.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::linalg::{format_rational, parse_rational, Rational};
use crate::tensor::Tensor3;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntryValue {
    Text(String),
    Int(i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorFile {
    pub dims: [usize; 3],
    pub entries: Vec<(usize, usize, usize, EntryValue)>,
}

impl TensorFile {
    /// Nonzero entries in row-major order, values in lowest terms.
    pub fn from_tensor(t: &Tensor3) -> Self {
        TensorFile {
            dims: t.dims(),
            entries: t
                .nonzeros()
                .map(|([i, j, k], v)| (i, j, k, EntryValue::Text(format_rational(v))))
                .collect(),
        }
    }

    pub fn to_tensor(&self) -> Result<Tensor3> {
        let entries = self
            .entries
            .iter()
            .map(|(i, j, k, v)| {
                let q = match v {
                    EntryValue::Text(s) => parse_rational(s)?,
                    EntryValue::Int(n) => Rational::from_integer((*n).into()),
                };
                Ok(([*i, *j, *k], q))
            })
            .collect::<Result<Vec<_>>>()?;
        Tensor3::from_sparse(self.dims, entries)
    }
}

pub fn parse_tensor(json: &str) -> Result<Tensor3> {
    let file: TensorFile = serde_json::from_str(json).map_err(|e| Error::invalid(format!("bad tensor file: {e}")))?;
    file.to_tensor()
}

pub fn serialize_tensor(t: &Tensor3) -> String {
    serde_json::to_string(&TensorFile::from_tensor(t)).expect("tensor files always serialize")
}

pub fn read_tensor(path: &Path) -> Result<Tensor3> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::invalid(format!("{}: {e}", path.display())))?;
    parse_tensor(&text)
}

pub fn write_tensor(path: &Path, t: &Tensor3) -> Result<()> {
    std::fs::write(path, serialize_tensor(t) + "\n").map_err(|e| Error::invalid(format!("{}: {e}", path.display())))
}
