//! Embedding sidecar file: a fixed dimension header followed by one
//! chunk vector per line, keyed by paper id. Chunk means are computed
//! with order-independent summation so chunk order never matters.

use crate::error::Error;
use crate::Result;
use std::collections::HashMap;
use std::fs;
use std::path::Path;

/// All chunk vectors for a corpus, keyed by paper id.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingTable {
    dimension: usize,
    /// Ids in first-appearance order, for deterministic iteration.
    ids: Vec<String>,
    chunks: HashMap<String, Vec<Vec<f64>>>,
}

impl EmbeddingTable {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Ids in the order they first appeared in the file.
    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.ids.iter().map(|s| s.as_str())
    }

    pub fn chunks_for(&self, id: &str) -> Option<&[Vec<f64>]> {
        self.chunks.get(id).map(|v| v.as_slice())
    }

    /// Mean vector over the id's chunks, or None for unknown ids.
    pub fn mean_for(&self, id: &str) -> Option<Vec<f64>> {
        self.chunks_for(id)
            .map(|chunks| chunk_mean_embedding(chunks).expect("table invariants hold"))
    }
}

/// Loads an embedding file and checks every row against `expected_dim`.
pub fn load_embeddings(path: &Path, expected_dim: usize) -> Result<EmbeddingTable> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_embeddings(&text, expected_dim)
}

/// Parses embedding file content. Row indices in errors are 1-based file
/// line numbers.
pub fn parse_embeddings(text: &str, expected_dim: usize) -> Result<EmbeddingTable> {
    if expected_dim == 0 {
        return Err(Error::EmbeddingFormat {
            message: "expected dimension must be positive".into(),
        });
    }
    let mut lines = text.lines().enumerate();
    let header = loop {
        match lines.next() {
            Some((_, l)) if l.trim().is_empty() => continue,
            Some((_, l)) => break l.trim(),
            None => {
                return Err(Error::EmbeddingFormat {
                    message: "missing header line \"dim=<d>\"".into(),
                })
            }
        }
    };
    let dim: usize = header
        .strip_prefix("dim=")
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| Error::EmbeddingFormat {
            message: format!("bad header {header:?}; expected \"dim=<d>\""),
        })?;
    if dim != expected_dim {
        return Err(Error::EmbeddingFormat {
            message: format!("file dimension {dim} does not match expected {expected_dim}"),
        });
    }

    let mut ids = Vec::new();
    let mut chunks: HashMap<String, Vec<Vec<f64>>> = HashMap::new();
    for (i, line) in lines {
        let row = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let (id, values) = line.split_once('|').ok_or_else(|| Error::EmbeddingFormat {
            message: format!("row {row}: missing \"<id> | <values>\" separator"),
        })?;
        let id = id.trim();
        if id.is_empty() {
            return Err(Error::EmbeddingFormat {
                message: format!("row {row}: empty id"),
            });
        }
        let mut vector = Vec::with_capacity(dim);
        for (vi, piece) in values.split(',').enumerate() {
            let v: f64 = piece.trim().parse().map_err(|_| Error::EmbeddingFormat {
                message: format!("row {row} (id {id}): value {} is not a float", vi + 1),
            })?;
            if !v.is_finite() {
                return Err(Error::EmbeddingFormat {
                    message: format!("row {row} (id {id}): non-finite value {v}"),
                });
            }
            vector.push(v);
        }
        if vector.len() != dim {
            return Err(Error::EmbeddingDimension {
                id: id.to_string(),
                row,
                expected: dim,
                found: vector.len(),
            });
        }
        chunks.entry(id.to_string()).or_insert_with(|| {
            ids.push(id.to_string());
            Vec::new()
        })
        .push(vector);
    }

    Ok(EmbeddingTable {
        dimension: dim,
        ids,
        chunks,
    })
}

/// Elementwise mean of chunk vectors. Each coordinate is summed in value
/// order, so the result is exactly invariant to chunk permutation.
pub fn chunk_mean_embedding(chunks: &[Vec<f64>]) -> Result<Vec<f64>> {
    let first = chunks
        .first()
        .ok_or_else(|| Error::invalid("cannot average an empty chunk list"))?;
    let dim = first.len();
    for (i, c) in chunks.iter().enumerate() {
        if c.len() != dim {
            return Err(Error::invalid(format!(
                "chunk {i} has length {}, expected {dim}",
                c.len()
            )));
        }
    }
    let n = chunks.len() as f64;
    let mut mean = Vec::with_capacity(dim);
    let mut column = Vec::with_capacity(chunks.len());
    for d in 0..dim {
        column.clear();
        column.extend(chunks.iter().map(|c| c[d]));
        column.sort_by(f64::total_cmp);
        mean.push(column.iter().sum::<f64>() / n);
    }
    Ok(mean)
}
