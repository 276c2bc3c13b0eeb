use std::fmt;
use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use toric_core::abelian::FgAbGroup;
use toric_core::luna::WeightSystem;
use toric_core::strata::JsonInt;

#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeFile {
    pub schema: u32,
    pub rank: usize,
    pub rays: Vec<Vec<JsonInt>>,
    #[serde(default)]
    pub normalize: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightFile {
    pub schema: u32,
    pub free_rank: usize,
    pub torsion: Vec<JsonInt>,
    pub weights: Vec<Vec<JsonInt>>,
}

fn read<T: DeserializeOwned>(path: &Path) -> Result<T, InputError> {
    let text = fs::read_to_string(path)
        .map_err(|e| InputError(format!("{}: cannot read: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        InputError(format!(
            "{}:{}:{}: {}",
            path.display(),
            e.line(),
            e.column(),
            e
        ))
    })
}

fn check_schema(path: &Path, schema: u32) -> Result<(), InputError> {
    if schema == 1 {
        Ok(())
    } else {
        Err(InputError(format!(
            "{}: unsupported schema {schema} (expected 1)",
            path.display()
        )))
    }
}

fn unwrap_rows(rows: Vec<Vec<JsonInt>>) -> Vec<Vec<BigInt>> {
    rows.into_iter()
        .map(|r| r.into_iter().map(|x| x.0).collect())
        .collect()
}

pub fn read_cone(path: &Path) -> Result<(usize, Vec<Vec<BigInt>>, bool), InputError> {
    let file: ConeFile = read(path)?;
    check_schema(path, file.schema)?;
    for (i, r) in file.rays.iter().enumerate() {
        if r.len() != file.rank {
            return Err(InputError(format!(
                "{}: ray {} has {} coordinates, expected rank {}",
                path.display(),
                i + 1,
                r.len(),
                file.rank
            )));
        }
    }
    Ok((file.rank, unwrap_rows(file.rays), file.normalize))
}

pub fn read_weights(path: &Path) -> Result<WeightSystem, InputError> {
    let file: WeightFile = read(path)?;
    check_schema(path, file.schema)?;
    let torsion = file.torsion.into_iter().map(|x| x.0).collect();
    let group = FgAbGroup::new(file.free_rank, torsion)
        .map_err(|e| InputError(format!("{}: invalid group: {e}", path.display())))?;
    WeightSystem::from_coords(group, unwrap_rows(file.weights))
        .map_err(|e| InputError(format!("{}: {e}", path.display())))
}
