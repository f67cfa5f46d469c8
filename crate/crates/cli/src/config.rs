use std::fmt;
use std::str::FromStr;

use agaut::audit::{evaluation_points, Caps, EvalSelector};
use agaut::curve::{AutElement, Curve, CurvePoint};
use agaut::rr::OnePointDivisor;
use agaut::{Error, Result};
use serde::{Deserialize, Serialize};

pub const CAPS_ENV: &str = "AGC_CAPS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

/// `inf` or `x0=<element>`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum BaseSpec {
    Infinity,
    X0(String),
}

impl FromStr for BaseSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        if s == "inf" {
            return Ok(Self::Infinity);
        }
        match s.strip_prefix("x0=") {
            Some(v) if !v.is_empty() => Ok(Self::X0(v.to_string())),
            _ => Err(format!(
                "base point must be `inf` or `x0=<element>`, got `{s}`"
            )),
        }
    }
}

impl fmt::Display for BaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Infinity => write!(f, "inf"),
            Self::X0(v) => write!(f, "x0={v}"),
        }
    }
}

impl From<BaseSpec> for String {
    fn from(b: BaseSpec) -> String {
        b.to_string()
    }
}

impl TryFrom<String> for BaseSpec {
    type Error = String;

    fn try_from(s: String) -> std::result::Result<Self, String> {
        s.parse()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum EvalSpec {
    AllMinusBase,
    OrbitComplement,
    Explicit,
}

/// Everything that determines a run. Serialized into JSON output so a
/// result can be regenerated from its report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub p: u32,
    pub ext: usize,
    pub base: Option<BaseSpec>,
    pub m: Option<u32>,
    pub eval: Option<EvalSpec>,
    /// Explicit evaluation points, `x,y` pairs separated by `;`.
    pub points: Option<String>,
    /// Parameter of `γ2`; the canonical one when absent.
    pub a: Option<String>,
    pub format: Format,
    pub caps: Caps,
}

impl RunConfig {
    pub fn new(p: u32, ext: usize, format: Format, caps: Caps) -> Self {
        Self {
            p,
            ext,
            base: None,
            m: None,
            eval: None,
            points: None,
            a: None,
            format,
            caps,
        }
    }

    /// Rejects inconsistent flag combinations before any computation.
    pub fn validate(&self) -> Result<()> {
        match (self.eval, &self.points) {
            (Some(EvalSpec::Explicit), None) => Err(Error::InvalidParameter(
                "--E explicit needs --points".into(),
            )),
            (Some(EvalSpec::AllMinusBase | EvalSpec::OrbitComplement), Some(_)) => Err(
                Error::InvalidParameter("--points is only used with --E explicit".into()),
            ),
            _ => Ok(()),
        }
    }

    pub fn curve(&self) -> Result<Curve> {
        self.validate()?;
        Curve::new(self.p, self.ext)
    }

    pub fn base_point(&self, curve: &Curve) -> Result<CurvePoint> {
        match self.base.as_ref().unwrap_or(&BaseSpec::Infinity) {
            BaseSpec::Infinity => Ok(CurvePoint::Infinity),
            BaseSpec::X0(v) => {
                let x = curve.field().parse_element(v)?;
                curve.point(x, curve.field().zero())
            }
        }
    }

    pub fn divisor(&self, curve: &Curve) -> Result<OnePointDivisor> {
        let m = self
            .m
            .ok_or_else(|| Error::InvalidParameter("--m is required".into()))?;
        OnePointDivisor::new(curve, self.base_point(curve)?, m)
    }

    pub fn gamma2_parameter(&self, curve: &Curve) -> Result<agaut::gf::FieldElement> {
        match &self.a {
            Some(a) => curve.field().parse_element(a),
            None => curve.default_gamma2_parameter(),
        }
    }

    pub fn evaluation_points(
        &self,
        curve: &Curve,
        group: &[AutElement],
    ) -> Result<Vec<CurvePoint>> {
        let base = self.base_point(curve)?;
        let selector = match self.eval.unwrap_or(EvalSpec::AllMinusBase) {
            EvalSpec::AllMinusBase => EvalSelector::AllMinusBase,
            EvalSpec::OrbitComplement => EvalSelector::OrbitComplement,
            EvalSpec::Explicit => {
                EvalSelector::Explicit(parse_points(curve, self.points.as_deref().unwrap_or(""))?)
            }
        };
        Ok(evaluation_points(curve, group, &base, &selector))
    }
}

/// `x,y;x,y;...`
pub fn parse_points(curve: &Curve, s: &str) -> Result<Vec<CurvePoint>> {
    let f = curve.field();
    s.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|pair| {
            let (x, y) = pair
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("point `{pair}` is not `x,y`")))?;
            curve.point(f.parse_element(x)?, f.parse_element(y)?)
        })
        .collect()
}

/// Caps from `AGC_CAPS` (`closure=..,min_distance=..,paut_n=..`), defaults elsewhere.
pub fn caps_from_env(value: Option<&str>) -> Result<Caps> {
    let mut caps = Caps::default();
    let Some(value) = value else {
        return Ok(caps);
    };
    for item in value.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, v) = item
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("{CAPS_ENV}: `{item}` is not key=value")))?;
        let parsed: u64 = v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{CAPS_ENV}: `{v}` is not an integer")))?;
        match key.trim() {
            "closure" => caps.closure = parsed as usize,
            "min_distance" => caps.min_distance = parsed,
            "paut_n" => caps.paut_n = parsed as usize,
            other => return Err(Error::Parse(format!("{CAPS_ENV}: unknown cap `{other}`"))),
        }
    }
    Ok(caps)
}
