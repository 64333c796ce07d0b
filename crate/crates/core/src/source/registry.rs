//! Parser for source specification strings such as `torus:gdelta_sin:Delta=1`,
//! `line:indicator01`, `seq:power_log:L=2,q=0` or `seq:custom:<path>`.

use super::family::{Family, GDeltaKind};
use super::sequence::{Coeffs, Weight, WeightedSequence};
use super::trig::TrigPolynomial;
use super::{SampledFunction, Source};
use crate::error::{GlsError, Result};

/// Default truncation of the Leindler witness sequences.
pub const DEFAULT_WITNESS_LENGTH: u64 = 100_000;

/// Truncation budget from `GLSPACE_BUDGET`, if set.
pub fn budget_override() -> Option<u64> {
    std::env::var("GLSPACE_BUDGET").ok().and_then(|v| v.trim().parse::<f64>().ok()).map(|v| v as u64).filter(|v| *v > 0)
}

struct Params {
    list: Vec<(Option<String>, String)>,
}

impl Params {
    fn parse(s: &str) -> Self {
        let list = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| match t.split_once('=') {
                Some((k, v)) => (Some(k.trim().to_string()), v.trim().to_string()),
                None => (None, t.trim().to_string()),
            })
            .collect();
        Params { list }
    }

    /// Parameter by name, or by position when given unnamed.
    fn get(&self, name: &str, pos: usize) -> Option<&str> {
        self.list
            .iter()
            .find(|(k, _)| k.as_deref().is_some_and(|k| k.eq_ignore_ascii_case(name)))
            .or_else(|| self.list.get(pos).filter(|(k, _)| k.is_none()))
            .map(|(_, v)| v.as_str())
    }

    fn num(&self, name: &str, pos: usize) -> Result<f64> {
        let v = self.get(name, pos).ok_or_else(|| GlsError::Spec(format!("missing parameter `{name}`")))?;
        v.parse::<f64>().map_err(|_| GlsError::Spec(format!("parameter `{name}` is not a number: {v}")))
    }

    fn num_or(&self, name: &str, pos: usize, default: f64) -> Result<f64> {
        if self.get(name, pos).is_some() {
            self.num(name, pos)
        } else {
            Ok(default)
        }
    }
}

fn non_negative_int(v: f64, what: &str) -> Result<u32> {
    if v >= 0.0 && v.fract() == 0.0 && v <= 64.0 {
        Ok(v as u32)
    } else {
        Err(GlsError::Spec(format!("{what} must be an integer in [0, 64], got {v}")))
    }
}

/// Parses a source specification.
pub fn parse_source(spec: &str) -> Result<Source> {
    parse_source_with_budget(spec, budget_override())
}

pub fn parse_source_with_budget(spec: &str, budget: Option<u64>) -> Result<Source> {
    let mut it = spec.splitn(3, ':');
    let domain = it.next().unwrap_or("").trim();
    let name = it.next().ok_or_else(|| GlsError::Spec(format!("missing family in `{spec}`")))?.trim();
    let rest = it.next().unwrap_or("");
    match domain {
        "torus" => parse_torus(name, rest).map(|f| Source::Function(SampledFunction::new(f))),
        "line" => parse_line(name, &Params::parse(rest)).map(|f| Source::Function(SampledFunction::new(f))),
        "seq" => parse_seq(name, rest, budget).map(|s| Source::Sequence(s.with_label(spec.to_string()))),
        _ => Err(GlsError::Spec(format!("unknown domain `{domain}` (expected torus, line or seq)"))),
    }
}

fn parse_torus(name: &str, rest: &str) -> Result<Family> {
    let p = Params::parse(rest);
    match name {
        "const" => Ok(Family::Constant),
        "cos" => Ok(Family::Trig(TrigPolynomial::cos(non_negative_int(p.num("k", 0)?, "k")? as usize))),
        "sin" => Ok(Family::Trig(TrigPolynomial::sin(non_negative_int(p.num("k", 0)?, "k")? as usize))),
        "trig" => {
            // trig:a0 a1 a2;b1 b2
            let (a, b) = rest.split_once(';').unwrap_or((rest, ""));
            let nums = |s: &str| -> Result<Vec<f64>> {
                s.split_whitespace().map(|t| t.parse::<f64>().map_err(|_| GlsError::Spec(format!("bad coefficient `{t}`")))).collect()
            };
            Ok(Family::Trig(TrigPolynomial::new(nums(a)?, nums(b)?)?))
        }
        "corpus" => {
            let corpus = p.get("name", 0).ok_or_else(|| GlsError::Spec("corpus name missing".into()))?;
            let idx = p.num("index", 1)? as usize;
            let polys = crate::corpus::trig_corpus(corpus)?;
            polys
                .get(idx)
                .cloned()
                .map(Family::Trig)
                .ok_or_else(|| GlsError::Spec(format!("corpus `{corpus}` has {} members", polys.len())))
        }
        "gdelta_sin" => Ok(Family::gdelta(non_negative_int(p.num("Delta", 0)?, "Delta")?, GDeltaKind::Sin)),
        "gdelta_cos" => Ok(Family::gdelta(non_negative_int(p.num("Delta", 0)?, "Delta")?, GDeltaKind::Cos)),
        "gm" => {
            let m = p.num("m", 0)?;
            if !(m > 0.0) {
                return Err(GlsError::Spec("m must be positive".into()));
            }
            Ok(Family::LogPower { m })
        }
        _ => Err(GlsError::Spec(format!("unknown torus family `{name}`"))),
    }
}

fn parse_line(name: &str, p: &Params) -> Result<Family> {
    match name {
        "indicator01" => Ok(Family::Indicator01),
        "inv_abs_tail" => Ok(Family::InvAbsTail),
        "gaussian" => Ok(Family::Gaussian),
        "fab" => {
            let (a, b) = (p.num("a", 0)?, p.num("b", 1)?);
            if !(a >= 1.0 && b > a) {
                return Err(GlsError::Spec(format!("fab needs 1 <= a < b, got a={a}, b={b}")));
            }
            Ok(Family::TwoPower { a, b })
        }
        _ => Err(GlsError::Spec(format!("unknown line family `{name}`"))),
    }
}

fn parse_seq(name: &str, rest: &str, budget: Option<u64>) -> Result<WeightedSequence> {
    let p = Params::parse(rest);
    let trunc = |default: Option<u64>| -> Result<Option<u64>> {
        if let Some(b) = budget {
            return Ok(Some(b));
        }
        match p.get("N", usize::MAX) {
            Some(v) => v.parse::<f64>().map(|n| Some(n as u64)).map_err(|_| GlsError::Spec(format!("bad N `{v}`"))),
            None => Ok(default),
        }
    };
    match name {
        "power_log" => {
            let l = p.num("L", 0)?;
            let q = p.num_or("q", 1, 0.0)?;
            if !(l >= 1.0) || q < 0.0 {
                return Err(GlsError::Spec("power_log needs L >= 1 and q >= 0".into()));
            }
            WeightedSequence::new(Coeffs::PowerLog { decay: 1.0 / l, log_power: q }, Weight::Unit, trunc(None)?)
        }
        "e1" | "unit" => Ok(WeightedSequence::from_values(vec![1.0])),
        "values" => {
            let v: Result<Vec<f64>> =
                rest.split(',').map(|t| t.trim().parse::<f64>().map_err(|_| GlsError::Spec(format!("bad value `{t}`")))).collect();
            Ok(WeightedSequence::from_values(v?))
        }
        "gdelta_coeffs" => {
            let d = non_negative_int(p.num("Delta", 0)?, "Delta")?;
            WeightedSequence::new(Coeffs::PowerLog { decay: 1.0, log_power: d as f64 }, Weight::Unit, trunc(None)?)
        }
        "delta_pair" => {
            let b = p.num("b", 0)?;
            let d = p.num_or("Delta", 1, 0.0)?;
            if !(b > 1.0) || d < 0.0 {
                return Err(GlsError::Spec("delta_pair needs b > 1 and Delta >= 0".into()));
            }
            WeightedSequence::new(
                Coeffs::PowerLog { decay: -1.0, log_power: 0.0 },
                Weight::PowerLog { coef: 1.0, decay: b + 1.0, log_power: d },
                trunc(None)?,
            )
        }
        "leindler_t" => {
            let (s, theta) = (p.num("s", 0)?, p.num("theta", 1)?);
            let n = trunc(Some(DEFAULT_WITNESS_LENGTH))?.unwrap_or(DEFAULT_WITNESS_LENGTH);
            crate::operators::leindler::t_witness(s, theta, n)
        }
        "leindler_u" => {
            let (s, theta) = (p.num("s", 0)?, p.num("theta", 1)?);
            let n = trunc(Some(DEFAULT_WITNESS_LENGTH))?.unwrap_or(DEFAULT_WITNESS_LENGTH);
            crate::operators::leindler::u_witness(s, theta, n)
        }
        "custom" => read_custom_csv(rest.trim()),
        _ => Err(GlsError::Spec(format!("unknown sequence family `{name}`"))),
    }
}

/// Reads rows `(n, c(n), β(n))`; a header row is skipped, missing indices are zero.
pub fn read_custom_csv(path: &str) -> Result<WeightedSequence> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| GlsError::Io(format!("{path}: {e}")))?;
    let mut rows: Vec<(u64, f64, f64)> = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| GlsError::Io(format!("{path}: {e}")))?;
        let parsed: Option<Vec<f64>> = rec.iter().map(|f| f.parse::<f64>().ok()).collect();
        match parsed {
            Some(v) if v.len() >= 2 => {
                let n = v[0];
                if !(n >= 1.0 && n.fract() == 0.0) {
                    return Err(GlsError::Spec(format!("{path}: row {}: index must be a positive integer", i + 1)));
                }
                rows.push((n as u64, v[1], v.get(2).copied().unwrap_or(1.0)));
            }
            _ if i == 0 => continue,
            _ => return Err(GlsError::Spec(format!("{path}: row {} is not numeric", i + 1))),
        }
    }
    if rows.is_empty() {
        return Err(GlsError::Spec(format!("{path}: no data rows")));
    }
    let len = rows.iter().map(|r| r.0).max().unwrap_or(0) as usize;
    let mut c = vec![0.0; len];
    let mut beta = vec![0.0; len];
    for (n, cv, bv) in rows {
        c[(n - 1) as usize] = cv;
        beta[(n - 1) as usize] = bv;
    }
    WeightedSequence::new(Coeffs::Values { values: c, beyond: None }, Weight::Values(beta), None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_named_and_positional_parameters() {
        assert!(matches!(parse_source("torus:gdelta_sin:Delta=1").unwrap(), Source::Function(_)));
        assert!(matches!(parse_source("torus:gdelta_cos:2").unwrap(), Source::Function(_)));
        assert!(matches!(parse_source("seq:power_log:L=2,q=0").unwrap(), Source::Sequence(_)));
        assert!(matches!(parse_source("line:fab:2,4").unwrap(), Source::Function(_)));
    }

    #[test]
    fn rejects_unknown_names() {
        assert!(parse_source("torus:nope").is_err());
        assert!(parse_source("plane:gaussian").is_err());
        assert!(parse_source("torus:gdelta_sin:Delta=1.5").is_err());
    }
}
