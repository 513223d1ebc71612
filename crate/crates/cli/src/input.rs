//! Reading instance files.

use std::path::Path;

use fasncl_core::fs::{Configuration, FasInstance};
use fasncl_core::ncl::{NclGraph, NclJson, Orientation};
use fasncl_core::{FsError, NclError};
use fasncl_gadgets::Color;
use serde::Deserialize;
use serde_json::Value;

/// Anything wrong with the input; maps to exit code 3.
#[derive(Debug)]
pub struct Invalid(pub String);

impl From<FsError> for Invalid {
    fn from(e: FsError) -> Self {
        Invalid(e.to_string())
    }
}

impl From<NclError> for Invalid {
    fn from(e: NclError) -> Self {
        Invalid(e.to_string())
    }
}

pub struct FasFile {
    pub instance: FasInstance,
    pub sigma: Configuration,
    pub sigma_prime: Configuration,
    pub colors: Option<Vec<Color>>,
}

#[derive(Deserialize)]
struct FasJson {
    #[serde(flatten)]
    instance: FasInstance,
    sigma: Configuration,
    sigma_prime: Configuration,
    colors: Option<Vec<Color>>,
}

fn read_json(path: &Path) -> Result<Value, Invalid> {
    let text = std::fs::read_to_string(path).map_err(|e| Invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Invalid(format!("{}: {e}", path.display())))
}

/// Flat `{X, Y, sigma, sigma_prime, colors?}` or a reduction bundle whose
/// graphs sit under `"fas"`.
pub fn read_fas(path: &Path) -> Result<FasFile, Invalid> {
    let mut value = read_json(path)?;
    if let Some(Value::Object(fas)) = value.get("fas").cloned() {
        let obj = value.as_object_mut().expect("has a key");
        obj.remove("fas");
        obj.extend(fas);
    }
    let json: FasJson = serde_json::from_value(value).map_err(|e| Invalid(format!("{}: {e}", path.display())))?;
    let n = json.instance.order();
    for (name, c) in [("sigma", &json.sigma), ("sigma_prime", &json.sigma_prime)] {
        if c.len() != n {
            return Err(Invalid(format!("{name} has {} entries, instance has {n}", c.len())));
        }
    }
    Ok(FasFile { instance: json.instance, sigma: json.sigma, sigma_prime: json.sigma_prime, colors: json.colors })
}

pub struct NclFile {
    pub graph: NclGraph,
    pub from: Option<Orientation>,
    pub to: Option<Orientation>,
}

/// NCL JSON, or a reduction bundle carrying it under `"ncl"`.
pub fn read_ncl(path: &Path) -> Result<NclFile, Invalid> {
    let mut value = read_json(path)?;
    if let Some(inner) = value.get("ncl").cloned() {
        value = inner;
    }
    let json: NclJson = serde_json::from_value(value).map_err(|e| Invalid(format!("{}: {e}", path.display())))?;
    let graph = NclGraph::from_json(&json)?;
    let orientation = |bits: &Option<Vec<u8>>| bits.as_deref().map(Orientation::from_bits).transpose();
    Ok(NclFile { from: orientation(&json.orientation_from)?, to: orientation(&json.orientation_to)?, graph })
}
