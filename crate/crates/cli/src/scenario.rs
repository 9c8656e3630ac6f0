//! Scenario files: TOML with sections `tower`, `characters`, `params`
//! (or `module` for a hand-written module) and `run`.

use std::collections::BTreeMap;
use std::sync::Arc;

use phimod::builder::{CaseKind, CaseParams, Characters, FilChoice, Scalars};
use phimod::coeff::{ECoeff, ECtx};
use phimod::phimod::{FiltrationData, GenAction, Mat2, PhiNModule, ProjLine};
use phimod::tower::{build_tower, CharacterData, Tower, TowerParams};
use phimod::Q64;
use serde::Deserialize;

use crate::error::CliError;
use crate::expr::parse_coeff;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub tower: Option<TowerSection>,
    pub characters: Option<CharSection>,
    pub params: Option<ParamsSection>,
    pub module: Option<ModuleSection>,
    #[serde(default)]
    pub run: RunSection,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerSection {
    pub case: String,
    pub p: u64,
    #[serde(default = "one_u32")]
    pub m0: u32,
    #[serde(default = "one_u32")]
    pub e_k: u32,
    #[serde(default = "one_u64")]
    pub cyclic_order: u64,
    #[serde(default)]
    pub m1: u32,
    #[serde(default)]
    pub n1: u32,
    pub m: u64,
    #[serde(default = "one_usize")]
    pub e: usize,
}

fn one_u32() -> u32 {
    1
}
fn one_u64() -> u64 {
    1
}
fn one_usize() -> usize {
    1
}

/// Cyclic towers: `chi1`, `chi2` as rationals. Supercuspidal towers: `s`
/// and lists `chi1`, `chi2` of values on the U_± generators.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharSection {
    pub s: Option<i64>,
    pub chi1: Option<toml::Value>,
    pub chi2: Option<toml::Value>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsSection {
    pub weights: Vec<[i64; 2]>,
    pub alpha: Option<Vec<String>>,
    pub a: Option<String>,
    pub b: Option<String>,
    pub c: Option<String>,
    pub alpha1: Option<String>,
    pub beta1: Option<String>,
    /// One entry per j: `none`, `I1`, `I2`, `I2 <L>`, `I3 <L>` or `<a> : <b>`.
    #[serde(default)]
    pub fil: Vec<String>,
}

pub type MatrixText = [[String; 2]; 2];

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSection {
    pub weights: Vec<[i64; 2]>,
    /// A_i for each component.
    pub frob: Vec<MatrixText>,
    /// N_i for each component; zero when absent.
    pub mono: Option<Vec<MatrixText>>,
    /// Per generator name: one matrix per component, or a single matrix
    /// used on every component.
    pub galois: BTreeMap<String, Vec<MatrixText>>,
    /// One entry per (j, g): `none` or `<u> : <v>`.
    pub lines: Vec<String>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    #[serde(default)]
    pub commands: Vec<String>,
    pub seed: Option<u64>,
    pub n: Option<usize>,
    pub case: Option<String>,
}

pub enum Input {
    Params(CaseParams),
    Module(PhiNModule, FiltrationData),
}

pub fn parse(text: &str) -> Result<Scenario, CliError> {
    toml::from_str(text).map_err(|e| CliError::Input(format!("scenario: {e}")))
}

fn field<T>(v: Option<T>, path: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Input(format!("{path}: missing")))
}

fn coeff(src: &str, ctx: &ECtx, path: &str) -> Result<ECoeff, CliError> {
    parse_coeff(src, ctx).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

fn rational(v: &toml::Value, path: &str) -> Result<Q64, CliError> {
    match v {
        toml::Value::Integer(n) => Ok(Q64::from_integer(*n)),
        toml::Value::String(s) => s
            .trim()
            .parse::<Q64>()
            .map_err(|_| CliError::Input(format!("{path}: '{s}' is not a rational num/den"))),
        _ => Err(CliError::Input(format!(
            "{path}: expected a rational \"num/den\""
        ))),
    }
}

fn rational_list(v: Option<&toml::Value>, path: &str) -> Result<Vec<Q64>, CliError> {
    match v {
        None => Ok(Vec::new()),
        Some(toml::Value::Array(items)) => items
            .iter()
            .enumerate()
            .map(|(k, x)| rational(x, &format!("{path}[{k}]")))
            .collect(),
        Some(_) => Err(CliError::Input(format!(
            "{path}: expected a list of rationals"
        ))),
    }
}

impl TowerSection {
    pub fn kind(&self) -> Result<CaseKind, CliError> {
        CaseKind::from_name(&self.case).ok_or_else(|| {
            let names: Vec<_> = CaseKind::ALL.iter().map(|k| k.name()).collect();
            CliError::Input(format!(
                "tower.case: '{}' is not one of {}",
                self.case,
                names.join(", ")
            ))
        })
    }

    pub fn params(&self) -> Result<TowerParams, CliError> {
        if self.p == 2 {
            return Err(phimod::Error::EvenPrime(2).into());
        }
        Ok(TowerParams {
            case: self.kind()?.tower_case(),
            p: self.p,
            m0: self.m0,
            e_k: self.e_k,
            cyclic_order: self.cyclic_order,
            m1: self.m1,
            n1: self.n1,
            m: self.m,
            e: self.e,
        })
    }
}

fn fil_choice(src: &str, ctx: &ECtx, path: &str) -> Result<Option<FilChoice>, CliError> {
    let s = src.trim();
    if s.eq_ignore_ascii_case("none") {
        return Ok(None);
    }
    if let Some((a, b)) = s.split_once(':') {
        return Ok(Some(FilChoice::Point {
            a: coeff(a, ctx, path)?,
            b: coeff(b, ctx, path)?,
        }));
    }
    let (head, rest) = s.split_once(char::is_whitespace).unwrap_or((s, ""));
    let l = if rest.trim().is_empty() {
        None
    } else {
        Some(coeff(rest, ctx, path)?)
    };
    match (head, l) {
        ("I1", None) => Ok(Some(FilChoice::I1)),
        ("I2", l) => Ok(Some(FilChoice::I2 { l })),
        ("I3", Some(l)) => Ok(Some(FilChoice::I3 { l })),
        ("I3", None) => Err(CliError::Input(format!(
            "{path}: I3 needs an L-invariant, e.g. 'I3 1'"
        ))),
        _ => Err(CliError::Input(format!(
            "{path}: expected none, I1, I2 [L], I3 L or 'a : b', got '{s}'"
        ))),
    }
}

fn characters(sec: &CharSection, kind: CaseKind) -> Result<Characters, CliError> {
    if kind.tower_case().is_supercuspidal() {
        Ok(Characters::Induced(CharacterData {
            s: field(sec.s, "characters.s")?,
            chi1: rational_list(sec.chi1.as_ref(), "characters.chi1")?,
            chi2: rational_list(sec.chi2.as_ref(), "characters.chi2")?,
        }))
    } else {
        if sec.s.is_some() {
            return Err(CliError::Input(
                "characters.s: only used in the supercuspidal cases".into(),
            ));
        }
        let chi1 = rational(
            field(sec.chi1.as_ref(), "characters.chi1")?,
            "characters.chi1",
        )?;
        let chi2 = match &sec.chi2 {
            Some(v) => rational(v, "characters.chi2")?,
            None => chi1,
        };
        Ok(Characters::Cyclic { chi1, chi2 })
    }
}

fn scalars(sec: &ParamsSection, kind: CaseKind, ctx: &ECtx) -> Result<Scalars, CliError> {
    let get = |v: &Option<String>, name: &str| -> Result<ECoeff, CliError> {
        let path = format!("params.{name}");
        coeff(field(v.as_deref(), &path)?, ctx, &path)
    };
    Ok(match kind {
        CaseKind::Steinberg => {
            let alphas = field(sec.alpha.as_ref(), "params.alpha")?;
            Scalars::Steinberg {
                alphas: alphas
                    .iter()
                    .enumerate()
                    .map(|(i, a)| coeff(a, ctx, &format!("params.alpha[{i}]")))
                    .collect::<Result<_, _>>()?,
            }
        }
        CaseKind::PsIrreducible => Scalars::PsIrreducible {
            a: get(&sec.a, "a")?,
            b: get(&sec.b, "b")?,
            c: get(&sec.c, "c")?,
        },
        CaseKind::PsNonSplit => Scalars::PsNonSplit {
            a: get(&sec.a, "a")?,
            b: get(&sec.b, "b")?,
        },
        CaseKind::PsSplit => Scalars::PsSplit {
            a: get(&sec.a, "a")?,
            b: get(&sec.b, "b")?,
        },
        CaseKind::ScUnramified => Scalars::ScUnramified {
            alpha1: get(&sec.alpha1, "alpha1")?,
            beta1: get(&sec.beta1, "beta1")?,
        },
        CaseKind::ScRamified => Scalars::ScRamified {
            alpha1: get(&sec.alpha1, "alpha1")?,
        },
    })
}

fn matrix(m: &MatrixText, ctx: &ECtx, path: &str) -> Result<Mat2, CliError> {
    let e = |r: usize, c: usize| coeff(&m[r][c], ctx, &format!("{path}[{r}][{c}]"));
    Ok(Mat2::new(e(0, 0)?, e(0, 1)?, e(1, 0)?, e(1, 1)?))
}

fn weights(w: &[[i64; 2]]) -> Vec<(i64, i64)> {
    w.iter().map(|&[a, b]| (a, b)).collect()
}

impl Scenario {
    pub fn tower_section(&self) -> Result<&TowerSection, CliError> {
        field(self.tower.as_ref(), "tower")
    }

    pub fn kind(&self) -> Result<CaseKind, CliError> {
        self.tower_section()?.kind()
    }

    pub fn input(&self) -> Result<Input, CliError> {
        match (&self.params, &self.module) {
            (Some(_), Some(_)) => Err(CliError::Input(
                "scenario: give either [params] or [module], not both".into(),
            )),
            (Some(p), None) => Ok(Input::Params(self.case_params(p)?)),
            (None, Some(m)) => {
                let (d, fil) = self.module(m)?;
                Ok(Input::Module(d, fil))
            }
            (None, None) => Err(CliError::Input(
                "scenario: missing [params] or [module]".into(),
            )),
        }
    }

    fn case_params(&self, sec: &ParamsSection) -> Result<CaseParams, CliError> {
        let tower = self.tower_section()?;
        let kind = tower.kind()?;
        let tp = tower.params()?;
        let ctx = ECtx::new(tp.p, tp.m, tp.e).map_err(CliError::from)?;
        let chars = characters(field(self.characters.as_ref(), "characters")?, kind)?;
        let fil = sec
            .fil
            .iter()
            .enumerate()
            .map(|(j, s)| fil_choice(s, &ctx, &format!("params.fil[{j}]")))
            .collect::<Result<_, _>>()?;
        Ok(CaseParams {
            tower: tp,
            weights: weights(&sec.weights),
            scalars: scalars(sec, kind, &ctx)?,
            characters: chars,
            fil,
        })
    }

    fn module(&self, sec: &ModuleSection) -> Result<(PhiNModule, FiltrationData), CliError> {
        let tower: Arc<Tower> = Arc::new(build_tower(&self.tower_section()?.params()?)?);
        let ctx = tower.field.clone();
        let n0 = tower.tower.n0 as usize;
        let per_component = |ms: &[MatrixText], path: &str| -> Result<Vec<Mat2>, CliError> {
            let mats: Vec<Mat2> = ms
                .iter()
                .enumerate()
                .map(|(i, m)| matrix(m, &ctx, &format!("{path}[{i}]")))
                .collect::<Result<_, _>>()?;
            match mats.len() {
                1 => Ok(vec![mats[0].clone(); n0]),
                k if k == n0 => Ok(mats),
                k => Err(CliError::Input(format!(
                    "{path}: {k} matrices, expected 1 or n0 = {n0}"
                ))),
            }
        };
        let frob = per_component(&sec.frob, "module.frob")?;
        let mono = match &sec.mono {
            Some(ms) => per_component(ms, "module.mono")?,
            None => vec![Mat2::zero(&ctx); n0],
        };
        let group = &tower.group;
        for name in sec.galois.keys() {
            if group.generator(name).is_none() {
                return Err(CliError::Input(format!(
                    "module.galois.{name}: no such generator"
                )));
            }
        }
        let mut galois = Vec::new();
        for (name, g) in group.generators() {
            let path = format!("module.galois.{name}");
            let ms = field(sec.galois.get(name), &path)?;
            galois.push(GenAction {
                shift: group.shift(g),
                mats: per_component(ms, &path)?,
            });
        }
        let lines = sec
            .lines
            .iter()
            .enumerate()
            .map(|(k, s)| {
                let path = format!("module.lines[{k}]");
                let s = s.trim();
                if s.eq_ignore_ascii_case("none") {
                    return Ok(None);
                }
                let (u, v) = s.split_once(':').ok_or_else(|| {
                    CliError::Input(format!("{path}: expected 'none' or 'u : v'"))
                })?;
                ProjLine::new(coeff(u, &ctx, &path)?, coeff(v, &ctx, &path)?)
                    .map(Some)
                    .map_err(|e| CliError::Input(format!("{path}: {e}")))
            })
            .collect::<Result<_, CliError>>()?;
        let d = PhiNModule {
            tower,
            frob,
            mono,
            galois,
        };
        Ok((
            d,
            FiltrationData {
                weights: weights(&sec.weights),
                lines,
            },
        ))
    }
}
