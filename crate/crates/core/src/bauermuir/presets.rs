//! Named chains connecting the four continued fractions of the G-ratio.

use serde::Serialize;

use super::{HeadExtractor, ModifyingSequence};
use crate::catalog::families;
use crate::cfengine::CfSpec;
use crate::error::{QcfError, Result};
use crate::qseries::{Complex, ParameterPoint, Sym};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PresetFamily {
    F1,
    F2,
    F3,
    F4,
}

impl PresetFamily {
    pub fn name(self) -> &'static str {
        match self {
            PresetFamily::F1 => "f1",
            PresetFamily::F2 => "f2",
            PresetFamily::F3 => "f3",
            PresetFamily::F4 => "f4",
        }
    }

    pub fn build(self, p: &ParameterPoint) -> Result<CfSpec> {
        let (a, l, b, q) = (p.get(Sym::A)?, p.get(Sym::Lambda)?, p.get(Sym::B)?, p.get(Sym::Q)?);
        Ok(match self {
            PresetFamily::F1 => families::f1(a, l, b, q),
            PresetFamily::F2 => families::f2(a, l, b, q),
            PresetFamily::F3 => families::f3(a, l, b, q),
            PresetFamily::F4 => families::f4(a, l, b, q),
        })
    }
}

type WFamily = fn(&Complex, &Complex, &Complex, usize) -> ModifyingSequence;

/// A chain from one family to another: the modifying sequence for step `i`
/// and the number of partial quotients frozen per step.
#[derive(Clone, Copy)]
pub struct ChainPreset {
    pub name: &'static str,
    pub source: PresetFamily,
    pub target: PresetFamily,
    pub head: HeadExtractor,
    pub description: &'static str,
    w: WFamily,
}

impl std::fmt::Debug for ChainPreset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ChainPreset")
            .field("name", &self.name)
            .field("source", &self.source)
            .field("target", &self.target)
            .field("head", &self.head)
            .finish()
    }
}

impl ChainPreset {
    /// Modifying sequence of step `i` at the given point.
    pub fn w(&self, p: &ParameterPoint, i: usize) -> Result<ModifyingSequence> {
        Ok((self.w)(p.get(Sym::A)?, p.get(Sym::B)?, p.get(Sym::Q)?, i))
    }

    /// The step family bound to a point, ready for [`super::bm_chain`].
    pub fn w_family(&self, p: &ParameterPoint) -> Result<impl Fn(usize) -> ModifyingSequence> {
        let (a, b, q) = (p.get(Sym::A)?.clone(), p.get(Sym::B)?.clone(), p.get(Sym::Q)?.clone());
        let w = self.w;
        Ok(move |i| w(&a, &b, &q, i))
    }
}

fn w_f1f2(a: &Complex, b: &Complex, q: &Complex, i: usize) -> ModifyingSequence {
    let (a, b, q) = (a.clone(), b.clone(), q.clone());
    ModifyingSequence::new(format!("f1f2[{i}]"), move |n| {
        let e = (n / 2 + 1 + i) as u64;
        Ok(if n % 2 == 0 { &a * &q.pow(e) } else { &b * &q.pow(e) })
    })
}

fn w_f2f3(_a: &Complex, b: &Complex, q: &Complex, i: usize) -> ModifyingSequence {
    let (b, q) = (b.clone(), q.clone());
    ModifyingSequence::new(format!("f2f3[{i}]"), move |n| Ok(-&(&b * &q.pow(n as u64))))
}

fn w_f3f4(a: &Complex, b: &Complex, q: &Complex, i: usize) -> ModifyingSequence {
    let (a, q) = (a.clone(), q.clone());
    let bqi = b * &q.pow(i as u64);
    ModifyingSequence::new(format!("f3f4[{i}]"), move |n| Ok(&bqi - &(&a * &q.pow(n as u64 + 1))))
}

fn w_f4f1(a: &Complex, b: &Complex, q: &Complex, i: usize) -> ModifyingSequence {
    if i.is_multiple_of(2) {
        return ModifyingSequence::zero(q.precision()).renamed(format!("f4f1[{i}]"));
    }
    let j = (i as u64 - 1) / 2;
    let (b, q) = (b.clone(), q.clone());
    let aq = a * &q.pow(j + 1);
    ModifyingSequence::new(
        format!("f4f1[{i}]"),
        move |n| Ok(&aq - &(&b * &q.pow(n as u64 + j + 1))),
    )
}

impl ModifyingSequence {
    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

static PRESETS: [ChainPreset; 4] = [
    ChainPreset {
        name: "thm41-f1f2",
        source: PresetFamily::F1,
        target: PresetFamily::F2,
        head: HeadExtractor { quotients_per_step: 1 },
        description: "w_2n = a q^(n+1+i), w_2n+1 = b q^(n+1+i)",
        w: w_f1f2,
    },
    ChainPreset {
        name: "thm41-f2f3",
        source: PresetFamily::F2,
        target: PresetFamily::F3,
        head: HeadExtractor { quotients_per_step: 1 },
        description: "w_n = -b q^n",
        w: w_f2f3,
    },
    ChainPreset {
        name: "thm41-f3f4",
        source: PresetFamily::F3,
        target: PresetFamily::F4,
        head: HeadExtractor { quotients_per_step: 1 },
        description: "w_n = b q^i - a q^(n+1)",
        w: w_f3f4,
    },
    ChainPreset {
        name: "thm41-f4f1",
        source: PresetFamily::F4,
        target: PresetFamily::F1,
        head: HeadExtractor { quotients_per_step: 1 },
        description: "w^(2i) = 0, w^(2i+1)_n = a q^(i+1) - b q^(n+i+1)",
        w: w_f4f1,
    },
];

pub fn list_presets() -> &'static [ChainPreset] {
    &PRESETS
}

pub fn chain_preset(name: &str) -> Result<&'static ChainPreset> {
    PRESETS
        .iter()
        .find(|p| p.name == name)
        .ok_or_else(|| QcfError::UnknownPreset(name.to_string()))
}

/// The G-ratio chains need `a, b, lambda` not all zero and
/// `lambda` away from `abq^n`, `-b/q^n` and `-a/q^(n-1)` for every `n >= 0`
/// (by at least `margin`).
pub fn thm41_admissible(p: &ParameterPoint, margin: f64) -> Result<bool> {
    let (a, b, l, q) = (p.get(Sym::A)?, p.get(Sym::B)?, p.get(Sym::Lambda)?, p.get(Sym::Q)?);
    if a.is_zero() && b.is_zero() && l.is_zero() {
        return Ok(false);
    }
    let mq = q.abs_f64();
    if mq >= 1.0 {
        return Ok(false);
    }
    if q.is_zero() {
        // only n = 0 of the first family is meaningful
        return Ok((l - &(a * b)).abs_f64() > margin);
    }
    let lm = l.abs_f64();
    let ab = a * b;
    let mut qn = q.one_like();
    let qinv = q.recip()?;
    let mut qinv_n = q.one_like();
    for n in 0..400 {
        let t1 = &ab * &qn;
        if (l - &t1).abs_f64() <= margin {
            return Ok(false);
        }
        let t2 = -&(b * &qinv_n);
        let t3 = -&(&(a * &qinv_n) * q);
        let mut far = t1.abs_f64() < margin / 4.0;
        for t in [&t2, &t3] {
            if (l - t).abs_f64() <= margin {
                return Ok(false);
            }
            far &= t.abs_f64() > lm + 2.0 * margin || t.is_zero();
        }
        if far && n > 0 {
            break;
        }
        qn = &qn * q;
        qinv_n = &qinv_n * &qinv;
    }
    Ok(true)
}
