//! JSONL dataset generation and statistics.
//!
//! One JSON object per line with fields in this order:
//! `n, edges, features, class_id, split, seed` — all values integers
//! (split codes: 0 train, 1 valid, 2 test). Instances are generated from
//! per-index seeds derived from the master seed, so generation can shard
//! across workers and still produce byte-identical files.

use super::{GraphInstance, Split, Universe, UniverseError};
use crate::graph::LabeledGraph;
use crate::util::derive_seed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

/// What to generate: family and size live in the universe handle.
#[derive(Debug, Clone, Copy)]
pub struct DatasetSpec {
    pub size: usize,
    pub seed: u64,
    /// Train/valid/test fractions; must be nonnegative and sum to 1.
    pub fractions: [f64; 3],
}

impl DatasetSpec {
    pub fn new(size: usize, seed: u64) -> DatasetSpec {
        DatasetSpec {
            size,
            seed,
            fractions: [0.9, 0.05, 0.05],
        }
    }

    /// Split sizes by largest remainder, so counts always sum to `size`.
    pub fn split_counts(&self) -> Result<[usize; 3], UniverseError> {
        let sum: f64 = self.fractions.iter().sum();
        if self.fractions.iter().any(|&f| f < 0.0) || (sum - 1.0).abs() > 1e-9 {
            return Err(UniverseError::BadFractions);
        }
        let mut counts = [0usize; 3];
        let mut remainders: Vec<(usize, f64)> = Vec::new();
        for (i, &f) in self.fractions.iter().enumerate() {
            let exact = f * self.size as f64;
            counts[i] = exact.floor() as usize;
            remainders.push((i, exact - exact.floor()));
        }
        let mut left = self.size - counts.iter().sum::<usize>();
        remainders.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
        for (i, _) in remainders {
            if left == 0 {
                break;
            }
            counts[i] += 1;
            left -= 1;
        }
        Ok(counts)
    }
}

#[derive(Serialize, Deserialize)]
struct Record {
    n: usize,
    edges: Vec<(usize, usize)>,
    features: Vec<Vec<u8>>,
    class_id: u64,
    split: u8,
    seed: u64,
}

/// Generates `spec.size` instances of the universe, split by position:
/// the first block is train, then valid, then test.
pub fn generate_dataset(
    universe: &Universe,
    spec: &DatasetSpec,
) -> Result<Vec<GraphInstance>, UniverseError> {
    let [n_train, n_valid, _] = spec.split_counts()?;
    let master = spec.seed;
    let mut instances = (0..spec.size)
        .into_par_iter()
        .map(|index| {
            let seed = derive_seed(master, index as u64);
            universe.sample_instance(seed)
        })
        .collect::<Result<Vec<_>, _>>()?;
    for (index, inst) in instances.iter_mut().enumerate() {
        inst.split = if index < n_train {
            Split::Train
        } else if index < n_train + n_valid {
            Split::Valid
        } else {
            Split::Test
        };
    }
    Ok(instances)
}

pub fn write_dataset(instances: &[GraphInstance], path: &Path) -> Result<(), UniverseError> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    for inst in instances {
        let record = Record {
            n: inst.graph.n(),
            edges: inst.graph.edges().to_vec(),
            features: inst.graph.features().unwrap_or_default().to_vec(),
            class_id: inst.class_id,
            split: inst.split.code(),
            seed: inst.seed,
        };
        serde_json::to_writer(&mut out, &record)
            .map_err(|e| UniverseError::Dataset {
                line: 0,
                message: e.to_string(),
            })?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_dataset(path: &Path) -> Result<Vec<GraphInstance>, UniverseError> {
    let reader = BufReader::new(std::fs::File::open(path)?);
    let mut instances = Vec::new();
    for (index, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let number = index + 1;
        let record: Record =
            serde_json::from_str(&line).map_err(|e| UniverseError::Dataset {
                line: number,
                message: e.to_string(),
            })?;
        let mut graph = LabeledGraph::new(record.n, record.edges).map_err(|e| {
            UniverseError::Dataset {
                line: number,
                message: e.to_string(),
            }
        })?;
        if !record.features.is_empty() {
            graph = graph
                .with_features(record.features)
                .map_err(|e| UniverseError::Dataset {
                    line: number,
                    message: e.to_string(),
                })?;
        }
        let split = Split::from_code(record.split).ok_or(UniverseError::Dataset {
            line: number,
            message: format!("bad split code {}", record.split),
        })?;
        instances.push(GraphInstance {
            graph,
            class_id: record.class_id,
            split,
            seed: record.seed,
        });
    }
    Ok(instances)
}

/// Averages over a dataset.
///
/// `avg_degree` follows the both-directions convention `4|E|/n`, which is
/// what the universe summary tables use; `avg_degree_standard` is the
/// ordinary `2|E|/n`.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetStats {
    pub instances: usize,
    pub classes_observed: usize,
    pub avg_degree: f64,
    pub avg_degree_standard: f64,
    pub avg_diameter: f64,
}

pub fn dataset_stats(instances: &[GraphInstance]) -> DatasetStats {
    let mut classes = std::collections::HashSet::new();
    let mut degree_sum = 0.0;
    let mut diameter_sum = 0.0;
    let mut diameter_count = 0usize;
    for inst in instances {
        classes.insert(inst.class_id);
        let n = inst.graph.n() as f64;
        degree_sum += 4.0 * inst.graph.edge_count() as f64 / n;
        if let Some(d) = inst.graph.diameter() {
            diameter_sum += d as f64;
            diameter_count += 1;
        }
    }
    let count = instances.len().max(1) as f64;
    DatasetStats {
        instances: instances.len(),
        classes_observed: classes.len(),
        avg_degree: degree_sum / count,
        avg_degree_standard: degree_sum / count / 2.0,
        avg_diameter: diameter_sum / diameter_count.max(1) as f64,
    }
}
