//! Typed, validated run parameters assembled from a [`Config`].

use mlharm::familykit::{
    combine_extreme_points, extremal_map, extreme_point, ExtremalWeights, ExtremeKind,
    ExtremePointWeights,
};
use mlharm::{
    Complex64, FamilyParams, HarmonicMap, MLParams, NegativeStyleMap, SampleGrid,
    DEFAULT_TRUNCATION,
};

use crate::config::Config;
use crate::CliError;

/// A map from the config, keeping track of whether it is sign-patterned.
#[derive(Debug, Clone)]
pub enum Map {
    Generic(HarmonicMap),
    Negative(NegativeStyleMap),
}

impl Map {
    pub fn as_map(&self) -> &HarmonicMap {
        match self {
            Map::Generic(f) => f,
            Map::Negative(f) => f.as_map(),
        }
    }
}

const KERNEL_KEYS: [&str; 6] = ["alpha", "beta", "gamma", "delta", "q", "p"];

pub fn ml_params(cfg: &Config) -> Result<MLParams, CliError> {
    let missing: Vec<&str> = KERNEL_KEYS.iter().copied().filter(|k| !cfg.has(k)).collect();
    if !missing.is_empty() {
        return Err(CliError::Config(format!("missing kernel keys: {}", missing.join(", "))));
    }
    let get = |k: &str| -> Result<Complex64, CliError> { cfg.require(k, cfg.complex(k)?) };
    let real = |k: &str| -> Result<f64, CliError> { cfg.require(k, cfg.f64(k)?) };
    Ok(MLParams::new(
        get("alpha")?,
        get("beta")?,
        get("gamma")?,
        get("delta")?,
        real("q")?,
        real("p")?,
    )?)
}

/// The family block, or `None` when none of its keys is present.
pub fn optional_family(cfg: &Config) -> Result<Option<FamilyParams>, CliError> {
    if ["m", "n", "eta"].iter().any(|k| cfg.has(k)) {
        family(cfg).map(Some)
    } else {
        Ok(None)
    }
}

pub fn family(cfg: &Config) -> Result<FamilyParams, CliError> {
    let ml = ml_params(cfg)?;
    let m = cfg.require("m", cfg.u32("m")?)?;
    let n = cfg.require("n", cfg.u32("n")?)?;
    let eta = cfg.require("eta", cfg.f64("eta")?)?;
    Ok(FamilyParams::new(m, n, eta, ml)?)
}

/// Grid radii and angle count, falling back to `default` for missing parts.
pub fn grid(cfg: &Config, default: SampleGrid) -> Result<SampleGrid, CliError> {
    let radii = cfg.f64_list("grid.radii")?.unwrap_or_else(|| default.radii().to_vec());
    let angles = cfg.usize("grid.angles")?.unwrap_or(default.angles_per_radius());
    Ok(SampleGrid::new(radii, angles)?)
}

fn real_mags(key: &str, v: &[Complex64]) -> Result<Vec<f64>, CliError> {
    v.iter()
        .map(|c| {
            if c.im == 0.0 && c.re >= 0.0 {
                Ok(c.re)
            } else {
                Err(CliError::Config(format!("`{key}` must list non-negative magnitudes")))
            }
        })
        .collect()
}

/// Builds the map block under `prefix` (`""` or `"other."`) for family `fp`.
pub fn map(cfg: &Config, prefix: &str, fp: &FamilyParams) -> Result<Map, CliError> {
    map_in(cfg, prefix, Some(fp))
}

/// As [`map`], for commands where the family block is optional; recipes
/// that need it fail when it is absent.
pub fn map_in(cfg: &Config, prefix: &str, fp: Option<&FamilyParams>) -> Result<Map, CliError> {
    let key = |k: &str| format!("{prefix}{k}");
    let kind = cfg.require(&key("map"), cfg.raw(&key("map")))?;
    let family = || {
        fp.ok_or_else(|| {
            CliError::Config(format!("map kind `{kind}` needs the family block (m, n, eta)"))
        })
    };
    let style = cfg.raw(&key("style")).unwrap_or("generic");
    if !matches!(style, "generic" | "negative") {
        return Err(CliError::Config(format!("`{}` must be generic or negative", key("style"))));
    }
    let list = |k: &str| -> Result<Vec<Complex64>, CliError> {
        Ok(cfg.complex_list(&key(k))?.unwrap_or_default())
    };
    let reals = |k: &str| -> Result<Vec<f64>, CliError> { real_mags(&key(k), &list(k)?) };
    let built = match kind {
        "identity" | "coefficients" => {
            let (a, b) = if kind == "identity" {
                (Vec::new(), Vec::new())
            } else {
                (list("a")?, list("b")?)
            };
            if style == "negative" {
                let a = real_mags(&key("a"), &a)?;
                let b = real_mags(&key("b"), &b)?;
                Map::Negative(NegativeStyleMap::new(&a, &b, family()?.co_sign())?)
            } else {
                let sign = match cfg.raw(&key("co_sign")).unwrap_or("1") {
                    "1" | "+1" => 1,
                    "-1" => -1,
                    other => {
                        return Err(CliError::Config(format!(
                            "`{}` must be 1 or -1, got {other}",
                            key("co_sign")
                        )))
                    }
                };
                Map::Generic(HarmonicMap::new(&a, &b, sign)?)
            }
        }
        "extremal" => {
            Map::Generic(extremal_map(family()?, &ExtremalWeights::new(list("x")?, list("y")?)?)?)
        }
        "extreme_point" => {
            let which = match cfg.require(&key("kind"), cfg.raw(&key("kind")))? {
                "h" => ExtremeKind::H,
                "g" => ExtremeKind::G,
                other => {
                    return Err(CliError::Config(format!(
                        "`{}` must be h or g, got {other}",
                        key("kind")
                    )))
                }
            };
            let index = cfg.require(&key("index"), cfg.usize(&key("index"))?)?;
            if index > 4 * DEFAULT_TRUNCATION {
                return Err(CliError::Config(format!("`{}` is too large", key("index"))));
            }
            Map::Negative(extreme_point(family()?, which, index)?)
        }
        "combination" => Map::Negative(combine_extreme_points(
            family()?,
            &ExtremePointWeights::new(reals("X")?, reals("Y")?)?,
        )?),
        other => return Err(CliError::Config(format!("unknown map kind `{other}`"))),
    };
    match cfg.usize(&key("order"))? {
        None => Ok(built),
        Some(order) => Ok(match built {
            Map::Generic(f) => Map::Generic(f.with_truncation(order)?),
            Map::Negative(f) => Map::Negative(f.with_truncation(order)?),
        }),
    }
}

/// The map block under `prefix`, which must be sign-patterned.
pub fn negative_map(
    cfg: &Config,
    prefix: &str,
    fp: &FamilyParams,
) -> Result<NegativeStyleMap, CliError> {
    match map(cfg, prefix, fp)? {
        Map::Negative(f) => Ok(f),
        Map::Generic(_) => Err(CliError::Config(format!(
            "`{prefix}map` must be sign-patterned (style = negative, extreme_point or combination)"
        ))),
    }
}
