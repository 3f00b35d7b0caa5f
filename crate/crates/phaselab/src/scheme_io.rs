//! Reading and writing splitting schemes as TOML, plus the textual
//! scheme selectors used by the command line and the examples.
//!
//! A scheme file looks like
//!
//! ```toml
//! name = "C"
//! nominal_order = 4
//!
//! [params]
//! alpha = 0.0
//! t0 = 0.16666666666666666
//!
//! [[stages]]
//! kind = "drift"
//! weight = 0.16666666666666666
//!
//! [[stages]]
//! kind = "kick"
//! weight = 0.375
//! grad_weight = 0.0
//! # ... palindromic tail ...
//! ```
//!
//! Floats are written in Rust's shortest round-trip form, so a
//! save/load cycle reproduces the weights bit for bit.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scheme::{
    algorithm_c, algorithm_opt_c, corrected_four_acb, four_acb, leapfrog, second_order,
    takahashi_imada, SplittingScheme, Stage, StageKind,
};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SchemeFile {
    name: String,
    nominal_order: u32,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    params: BTreeMap<String, f64>,
    stages: Vec<StageDto>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StageDto {
    kind: String,
    weight: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    grad_weight: Option<f64>,
}

pub fn to_toml(scheme: &SplittingScheme) -> Result<String> {
    let dto = SchemeFile {
        name: scheme.name.clone(),
        nominal_order: scheme.nominal_order,
        params: scheme.params.clone(),
        stages: scheme
            .stages
            .iter()
            .map(|s| StageDto {
                kind: match s.kind {
                    StageKind::Drift => "drift".into(),
                    StageKind::Kick => "kick".into(),
                },
                weight: s.weight,
                grad_weight: match s.kind {
                    StageKind::Kick => Some(s.grad_weight),
                    StageKind::Drift => None,
                },
            })
            .collect(),
    };
    toml::to_string_pretty(&dto)
        .map_err(|e| Error::invalid_scheme("serialize", format!("cannot encode scheme: {e}")))
}

pub fn from_toml(text: &str) -> Result<SplittingScheme> {
    let dto: SchemeFile =
        toml::from_str(text).map_err(|e| Error::invalid_scheme("parse", e.to_string()))?;
    let mut stages = Vec::with_capacity(dto.stages.len());
    for (i, s) in dto.stages.iter().enumerate() {
        let stage = match s.kind.as_str() {
            "drift" => {
                if let Some(g) = s.grad_weight {
                    if g != 0.0 {
                        return Err(Error::invalid_scheme(
                            "drift-grad-weight",
                            format!("stage {i}: a drift cannot carry a gradient weight"),
                        ));
                    }
                }
                Stage::drift(s.weight)
            }
            "kick" => Stage::kick(s.weight, s.grad_weight.unwrap_or(0.0)),
            other => {
                return Err(Error::invalid_scheme(
                    "stage-kind",
                    format!("stage {i}: unknown kind {other:?} (expected drift or kick)"),
                ))
            }
        };
        stages.push(stage);
    }
    let scheme = SplittingScheme {
        name: dto.name,
        nominal_order: dto.nominal_order,
        stages,
        params: dto.params,
    };
    scheme.validate()?;
    Ok(scheme)
}

pub fn save_scheme(path: impl AsRef<Path>, scheme: &SplittingScheme) -> Result<()> {
    fs::write(path, to_toml(scheme)?)?;
    Ok(())
}

pub fn load_scheme(path: impl AsRef<Path>) -> Result<SplittingScheme> {
    let text = fs::read_to_string(path)?;
    from_toml(&text)
}

/// Parse a number that may be written as a fraction, e.g. `1/6` or `0.25`.
fn parse_value(s: &str) -> Result<f64> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: f64 = num
            .trim()
            .parse()
            .map_err(|_| Error::Usage(format!("bad numerator in {s:?}")))?;
        let d: f64 = den
            .trim()
            .parse()
            .map_err(|_| Error::Usage(format!("bad denominator in {s:?}")))?;
        if d == 0.0 {
            return Err(Error::Usage(format!("zero denominator in {s:?}")));
        }
        Ok(n / d)
    } else {
        s.parse()
            .map_err(|_| Error::Usage(format!("cannot parse number {s:?}")))
    }
}

/// Parse `key=value` argument lists like `t0=0.17, alpha=1/2`.
fn parse_kv(args: &str) -> Result<BTreeMap<String, f64>> {
    let mut map = BTreeMap::new();
    for part in args.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Usage(format!("expected key=value, got {part:?}")))?;
        map.insert(k.trim().to_string(), parse_value(v)?);
    }
    Ok(map)
}

/// Resolve a scheme selector:
///
/// - `C`, `Opt-C`, `TI`, `leapfrog` (optionally prefixed `builtin:`)
/// - `4acb(t0=0.17, alpha=0.5)` — alpha defaults to 0, values may be
///   fractions like `1/6`
/// - `second-order(alpha=1/24)`
/// - `file:PATH` — load a TOML scheme file
pub fn parse_scheme_selector(selector: &str) -> Result<SplittingScheme> {
    let s = selector.trim();
    if let Some(path) = s.strip_prefix("file:") {
        return load_scheme(path.trim());
    }
    let s = s.strip_prefix("builtin:").unwrap_or(s);

    if s.eq_ignore_ascii_case("c") {
        return Ok(algorithm_c());
    }
    if s.eq_ignore_ascii_case("opt-c") {
        return Ok(algorithm_opt_c());
    }
    if s.eq_ignore_ascii_case("ti") {
        return Ok(takahashi_imada());
    }
    if s.eq_ignore_ascii_case("leapfrog") {
        return Ok(leapfrog());
    }

    if let Some(rest) = s.strip_prefix("4acb(") {
        let args = rest
            .strip_suffix(')')
            .ok_or_else(|| Error::Usage(format!("missing ')' in {selector:?}")))?;
        // "alpha=corrected" binds alpha to t0 and is not a number, so pull
        // it out before the numeric key-value parse
        let mut corrected = false;
        let numeric: Vec<&str> = args
            .split(',')
            .filter(|part| {
                let is_corrected = part
                    .trim()
                    .strip_prefix("alpha")
                    .and_then(|r| r.trim_start().strip_prefix('='))
                    .map(|v| v.trim().eq_ignore_ascii_case("corrected"))
                    .unwrap_or(false);
                corrected |= is_corrected;
                !is_corrected
            })
            .collect();
        let kv = parse_kv(&numeric.join(","))?;
        for k in kv.keys() {
            if k != "t0" && k != "alpha" {
                return Err(Error::Usage(format!("4acb does not take a {k:?} argument")));
            }
        }
        let t0 = *kv
            .get("t0")
            .ok_or_else(|| Error::Usage("4acb needs t0=...".into()))?;
        if corrected {
            if kv.contains_key("alpha") {
                return Err(Error::Usage(
                    "4acb: give alpha once, either a number or \"corrected\"".into(),
                ));
            }
            return corrected_four_acb(t0);
        }
        let alpha = kv.get("alpha").copied().unwrap_or(0.0);
        return four_acb(t0, alpha);
    }

    if let Some(rest) = s.strip_prefix("second-order(") {
        let args = rest
            .strip_suffix(')')
            .ok_or_else(|| Error::Usage(format!("missing ')' in {selector:?}")))?;
        let kv = parse_kv(args)?;
        for k in kv.keys() {
            if k != "alpha" {
                return Err(Error::Usage(format!(
                    "second-order does not take a {k:?} argument"
                )));
            }
        }
        let alpha = kv.get("alpha").copied().unwrap_or(0.0);
        return Ok(second_order(alpha));
    }

    Err(Error::Usage(format!(
        "unknown scheme selector {selector:?}; try C, Opt-C, TI, leapfrog, \
         4acb(t0=..., alpha=...), second-order(alpha=...) or file:PATH"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::FORWARD_T0_LIMIT;

    #[test]
    fn roundtrip_is_bit_faithful() {
        for scheme in [
            algorithm_c(),
            algorithm_opt_c(),
            takahashi_imada(),
            leapfrog(),
            four_acb(0.199, 0.37).unwrap(),
        ] {
            let text = to_toml(&scheme).unwrap();
            let back = from_toml(&text).unwrap();
            assert_eq!(back.name, scheme.name);
            assert_eq!(back.nominal_order, scheme.nominal_order);
            assert_eq!(back.params, scheme.params);
            assert_eq!(back.stages.len(), scheme.stages.len());
            for (a, b) in back.stages.iter().zip(&scheme.stages) {
                assert_eq!(a.kind, b.kind);
                assert_eq!(a.weight.to_bits(), b.weight.to_bits());
                assert_eq!(a.grad_weight.to_bits(), b.grad_weight.to_bits());
            }
        }
    }

    #[test]
    fn rejects_unknown_fields_and_kinds() {
        let bad_field = r#"
name = "x"
nominal_order = 2
surprise = 1
[[stages]]
kind = "drift"
weight = 1.0
"#;
        assert!(from_toml(bad_field).is_err());

        let bad_kind = r#"
name = "x"
nominal_order = 2
[[stages]]
kind = "twist"
weight = 1.0
"#;
        let err = from_toml(bad_kind).unwrap_err();
        assert!(err.to_string().contains("stage-kind"), "{err}");
    }

    #[test]
    fn rejects_invalid_scheme_contents() {
        // drift weights must sum to 1
        let text = r#"
name = "x"
nominal_order = 2
[[stages]]
kind = "drift"
weight = 0.5
[[stages]]
kind = "kick"
weight = 1.0
[[stages]]
kind = "drift"
weight = 0.25
"#;
        let err = from_toml(text).unwrap_err();
        assert!(err.to_string().contains("drift-weight-sum"), "{err}");
    }

    #[test]
    fn selectors_resolve() {
        assert_eq!(parse_scheme_selector("C").unwrap().name, "C");
        assert_eq!(parse_scheme_selector("builtin:opt-c").unwrap().name, "Opt-C");
        assert_eq!(parse_scheme_selector(" TI ").unwrap().name, "TI");
        assert_eq!(parse_scheme_selector("leapfrog").unwrap().name, "leapfrog");

        let s = parse_scheme_selector("4acb(t0=1/6, alpha=0.9)").unwrap();
        assert_eq!(s.param("t0"), Some(1.0 / 6.0));
        assert_eq!(s.param("alpha"), Some(0.9));

        let s = parse_scheme_selector("second-order(alpha=1/24)").unwrap();
        assert_eq!(s.param("alpha"), Some(1.0 / 24.0));

        assert!(parse_scheme_selector("nonesuch").is_err());
        assert!(parse_scheme_selector("4acb(t0=0.5)").is_err()); // singular member
        assert!(parse_scheme_selector(&format!("4acb(t0={})", FORWARD_T0_LIMIT + 0.05)).is_ok());
        assert!(parse_scheme_selector("4acb(q=1)").is_err());
    }

    #[test]
    fn file_roundtrip() {
        let dir = std::env::temp_dir().join("phaselab-scheme-io-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("c.toml");
        let scheme = algorithm_c();
        save_scheme(&path, &scheme).unwrap();
        let back = load_scheme(&path).unwrap();
        assert_eq!(back.name, "C");
        std::fs::remove_dir_all(&dir).ok();
    }
}
