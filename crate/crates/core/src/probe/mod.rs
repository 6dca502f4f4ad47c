//! Empirical checks of boundedness claims: operator-norm lower bounds,
//! order-threshold scans and embedding-ratio sweeps over scale ladders.
//!
//! Each scan row is a table of ratios against the scale `N`; a least-squares
//! line through `(ln N, ln ratio)` gives a growth exponent which is then
//! classified as a trend.

mod families;

pub use families::{default_ladder, headroom_limit, Generator, TestFamily};

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::embedding::{besov_embeds_fl, triebel_embeds_fl, Decision, IndexTuple};
use crate::exec::Executor;
use crate::fio::{apply_fio, required_order_fl, FioSpec};
use crate::function_spaces::{besov_norm, fl_norm, triebel_norm, Space};
use crate::index::{rational_to_f64, Exponent, Rational};
use crate::littlewood_paley::DyadicFamily;
use crate::phases::Phase;
use crate::spectral::forward_transform;
use crate::symbols::BesselSymbol;
use crate::{Error, Result};

/// Trend classification of a fitted growth exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Trend {
    #[cfg_attr(feature = "serde", serde(rename = "bounded-trend"))]
    Bounded,
    #[cfg_attr(feature = "serde", serde(rename = "growth-trend"))]
    Growth,
    Inconclusive,
}

impl fmt::Display for Trend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Trend::Bounded => "bounded-trend",
            Trend::Growth => "growth-trend",
            Trend::Inconclusive => "inconclusive",
        })
    }
}

/// Classification thresholds.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TrendRule {
    /// Exponents at or below this are bounded.
    pub bounded_max: f64,
    /// Exponents at or above this are growth.
    pub growth_min: f64,
    /// Fits with RMS log residual at or above this are inconclusive.
    pub max_residual: f64,
}

impl Default for TrendRule {
    fn default() -> Self {
        Self {
            bounded_max: 0.05,
            growth_min: 0.08,
            max_residual: 0.1,
        }
    }
}

/// Least-squares line `ln ratio ≈ intercept + exponent · ln N`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Fit {
    pub exponent: f64,
    pub intercept: f64,
    /// Root-mean-square residual in natural log.
    pub rms_residual: f64,
}

/// Fits the growth exponent. Needs at least two scales and positive ratios.
pub fn fit_growth(scales: &[usize], ratios: &[f64]) -> Result<Fit> {
    if scales.len() != ratios.len() {
        return Err(Error::LengthMismatch {
            expected: scales.len(),
            actual: ratios.len(),
        });
    }
    if scales.len() < 2 {
        return Err(Error::InvalidArgument("a fit needs at least two scales".into()));
    }
    if let Some(i) = ratios.iter().position(|r| !(r.is_finite() && *r > 0.0)) {
        return Err(Error::NonFinite(i));
    }
    let xs: Vec<f64> = scales.iter().map(|&s| libm::log(s as f64)).collect();
    let ys: Vec<f64> = ratios.iter().map(|&r| libm::log(r)).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidArgument("scales must not all coincide".into()));
    }
    let exponent = sxy / sxx;
    let intercept = my - exponent * mx;
    let ss: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let r = y - intercept - exponent * x;
            r * r
        })
        .sum();
    Ok(Fit {
        exponent,
        intercept,
        rms_residual: libm::sqrt(ss / n),
    })
}

pub fn classify(fit: &Fit, rule: &TrendRule) -> Trend {
    if !(fit.rms_residual < rule.max_residual) {
        Trend::Inconclusive
    } else if fit.exponent <= rule.bounded_max {
        Trend::Bounded
    } else if fit.exponent >= rule.growth_min {
        Trend::Growth
    } else {
        Trend::Inconclusive
    }
}

/// Lower bound for `‖T‖_{FL^p → FL^q}` over a test family.
#[derive(Debug, Clone, PartialEq)]
pub struct OpNormEstimate {
    /// Max of the member ratios; never exceeds the true norm.
    pub value: f64,
    pub scales: Vec<usize>,
    pub ratios: Vec<f64>,
}

/// `max_f ‖Tf‖_{FL^q} / ‖f‖_{FL^p}` over the family members.
pub fn estimate_operator_norm(
    t: &FioSpec,
    p: Exponent,
    q: Exponent,
    fam: &TestFamily,
    exec: &dyn Executor,
) -> Result<OpNormEstimate> {
    let limit = headroom_limit(fam.grid());
    if let Some(&s) = fam.ladder().iter().find(|&&s| s > limit) {
        return Err(Error::NyquistHeadroom { max_freq: s, limit });
    }
    let mut scales = Vec::new();
    let mut ratios = Vec::new();
    for (s, f) in fam.members()? {
        let tf = apply_fio(t, &f, exec)?;
        ratios.push(fl_norm(&tf, q, 0.0).value / fl_norm(&f, p, 0.0).value);
        scales.push(s);
    }
    let value = ratios.iter().copied().fold(0.0, f64::max);
    Ok(OpNormEstimate { value, scales, ratios })
}

/// One parameter setting across the ladder.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScanRow {
    pub label: String,
    /// The order `m` (threshold scans) or the smoothness `s` (sweeps).
    pub parameter: f64,
    pub scales: Vec<usize>,
    pub ratios: Vec<f64>,
    pub fit: Fit,
    pub verdict: Trend,
    /// Verdict implied by the theory, when the row is decisive.
    pub expected: Option<Trend>,
    /// Distance of the deciding inequality from its boundary.
    pub margin: Option<f64>,
}

impl ScanRow {
    /// True when the row has an expectation and the verdict meets it.
    pub fn agrees(&self) -> Option<bool> {
        self.expected.map(|e| e == self.verdict)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum ScanKind {
    Threshold,
    Embedding,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScanReport {
    pub kind: ScanKind,
    pub generator: Generator,
    pub ladder: Vec<usize>,
    pub seed: u64,
    /// Order threshold of a threshold scan.
    pub threshold: Option<f64>,
    pub rule: TrendRule,
    pub rows: Vec<ScanRow>,
}

fn row(label: String, parameter: f64, scales: Vec<usize>, ratios: Vec<f64>, rule: &TrendRule) -> Result<ScanRow> {
    let fit = fit_growth(&scales, &ratios)?;
    Ok(ScanRow {
        label,
        parameter,
        scales,
        ratios,
        verdict: classify(&fit, rule),
        fit,
        expected: None,
        margin: None,
    })
}

/// For each `m`, the per-scale ratios `‖Tf‖_{FL^p} / ‖f‖_{FL^p}` with
/// symbol `⟨k⟩^m`. Rows with `m` below the threshold expect a bounded trend,
/// rows more than `0.1` above it expect growth; the threshold row itself is
/// not classified.
pub fn threshold_scan(
    phase: Arc<dyn Phase>,
    p: Exponent,
    m_grid: &[f64],
    fam: &TestFamily,
    rule: &TrendRule,
    exec: &dyn Executor,
) -> Result<ScanReport> {
    if phase.dim() != fam.grid().dim() {
        return Err(Error::GridMismatch(alloc::format!(
            "phase dimension {} vs family dimension {}",
            phase.dim(),
            fam.grid().dim()
        )));
    }
    let threshold = required_order_fl(p, phase.rank() as u32)?;
    let members = fam.members()?;
    let mut rows = Vec::with_capacity(m_grid.len());
    for &m in m_grid {
        let t = FioSpec::new(phase.clone(), Arc::new(BesselSymbol { order: m }))?;
        let mut scales = Vec::new();
        let mut ratios = Vec::new();
        for (s, f) in &members {
            let tf = apply_fio(&t, f, exec)?;
            ratios.push(fl_norm(&tf, p, 0.0).value / fl_norm(f, p, 0.0).value);
            scales.push(*s);
        }
        let mut r = row(alloc::format!("m={m}"), m, scales, ratios, rule)?;
        let margin = m - threshold;
        r.margin = Some(margin);
        r.expected = if margin.abs() < 1e-12 {
            None
        } else if margin < 0.0 {
            Some(Trend::Bounded)
        } else if margin >= 0.1 - 1e-12 {
            Some(Trend::Growth)
        } else {
            None
        };
        rows.push(r);
    }
    Ok(ScanReport {
        kind: ScanKind::Threshold,
        generator: fam.generator(),
        ladder: fam.ladder().to_vec(),
        seed: fam.seed(),
        threshold: Some(threshold),
        rule: *rule,
        rows,
    })
}

/// Truth value of the embedding predicate and, when false, how far the
/// deciding inequality is from holding.
pub fn predicate_with_margin(which: Space, t: &IndexTuple) -> Result<(bool, Option<f64>)> {
    let verdict = match which {
        Space::Besov => besov_embeds_fl(t),
        Space::Triebel => triebel_embeds_fl(t)?,
        Space::Fl => return Err(Error::InvalidArgument("sweeps compare FL^r with B or F".into())),
    };
    if verdict.holds {
        return Ok((true, None));
    }
    let one = Rational::from_integer(1);
    let margin = match verdict.decision {
        Decision::PAboveTwo => t.p.recip() - Rational::new(1, 2),
        Decision::DualityFails => t.p.recip() + t.r.recip() - one,
        Decision::NoClause => t.s - t.critical_smoothness(),
        _ => Rational::from_integer(0),
    };
    Ok((false, Some(-rational_to_f64(&margin))))
}

/// Per tuple, the ratios `‖f‖_{FL^r} / ‖f‖_{B^s_{p,q} or F^s_{p,q}}` across the
/// ladder. True predicates expect a bounded trend; false ones expect growth
/// when the deciding inequality fails by at least `0.1`.
pub fn embedding_ratio_sweep(
    which: Space,
    tuples: &[IndexTuple],
    fam: &TestFamily,
    rule: &TrendRule,
) -> Result<ScanReport> {
    let lp = DyadicFamily::new(*fam.grid())?;
    let members = fam.members()?;
    let d = fam.grid().dim() as u32;
    let mut rows = Vec::with_capacity(tuples.len());
    for t in tuples {
        if t.d != d {
            return Err(Error::GridMismatch(alloc::format!("tuple dimension {} vs grid dimension {d}", t.d)));
        }
        let (holds, margin) = predicate_with_margin(which, t)?;
        let s = rational_to_f64(&t.s);
        let mut scales = Vec::new();
        let mut ratios = Vec::new();
        for (scale, f) in &members {
            let num = fl_norm(f, t.r, 0.0).value;
            let den = match which {
                Space::Besov => besov_norm(f, t.p, t.q, s, &lp)?.value,
                _ => triebel_norm(f, t.p, t.q, s, &lp)?.value,
            };
            ratios.push(num / den);
            scales.push(*scale);
        }
        let label = alloc::format!("p={} q={} r={} s={} d={}", t.p, t.q, t.r, t.s, t.d);
        let mut r = row(label, s, scales, ratios, rule)?;
        r.margin = margin;
        r.expected = if holds {
            Some(Trend::Bounded)
        } else if margin.is_some_and(|m| m >= 0.1 - 1e-12) {
            Some(Trend::Growth)
        } else {
            None
        };
        rows.push(r);
    }
    Ok(ScanReport {
        kind: ScanKind::Embedding,
        generator: fam.generator(),
        ladder: fam.ladder().to_vec(),
        seed: fam.seed(),
        threshold: None,
        rule: *rule,
        rows,
    })
}

/// Largest `|k|_∞` carrying a coefficient above `tol` (relative to the max).
pub fn spectral_extent(f: &crate::GridFunction, tol: f64) -> usize {
    let spec = forward_transform(f);
    let g = *f.grid();
    let top = spec.coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max);
    (0..g.len())
        .filter(|&i| spec.coeffs()[i].norm() > tol * top)
        .map(|i| {
            let k = g.frequency(i);
            k[0].unsigned_abs().max(k[1].unsigned_abs()) as usize
        })
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Serial;
    use crate::phases::CataloguePhase;
    use crate::symbols::ConstantSymbol;
    use crate::GridSpec;

    #[test]
    fn fit_recovers_power_law() {
        let scales = [8, 16, 32, 64];
        let ratios: Vec<f64> = scales.iter().map(|&s| 3.0 * libm::pow(s as f64, 0.25)).collect();
        let fit = fit_growth(&scales, &ratios).unwrap();
        assert!((fit.exponent - 0.25).abs() < 1e-12);
        assert!((fit.intercept - libm::log(3.0)).abs() < 1e-12);
        assert!(fit.rms_residual < 1e-12);
        assert_eq!(classify(&fit, &TrendRule::default()), Trend::Growth);
        assert!(fit_growth(&[8], &[1.0]).is_err());
        assert!(fit_growth(&[8, 16], &[1.0, 0.0]).is_err());
    }

    #[test]
    fn classification_bands() {
        let rule = TrendRule::default();
        let f = |e, r| Fit {
            exponent: e,
            intercept: 0.0,
            rms_residual: r,
        };
        assert_eq!(classify(&f(0.05, 0.0), &rule), Trend::Bounded);
        assert_eq!(classify(&f(0.06, 0.0), &rule), Trend::Inconclusive);
        assert_eq!(classify(&f(0.5, 0.2), &rule), Trend::Inconclusive);
    }

    #[test]
    fn identity_operator_norm_is_one() {
        let g = GridSpec::new(1, 64).unwrap();
        let fam = TestFamily::new(Generator::Lacunary, alloc::vec![4, 8, 16], 0, g).unwrap();
        let t = FioSpec::new(Arc::new(CataloguePhase::identity(1).unwrap()), Arc::new(ConstantSymbol::one())).unwrap();
        let two = Exponent::from_int(2).unwrap();
        let est = estimate_operator_norm(&t, two, two, &fam, &Serial).unwrap();
        assert!((est.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn margins_of_false_predicates() {
        let t = IndexTuple::parse("1", "1", "1", "0", 1).unwrap();
        assert_eq!(predicate_with_margin(Space::Besov, &t).unwrap(), (false, Some(1.0)));
        let t = IndexTuple::parse("4", "1", "1", "0", 1).unwrap();
        assert_eq!(predicate_with_margin(Space::Besov, &t).unwrap(), (false, Some(0.25)));
        let t = IndexTuple::parse("2", "2", "2", "0", 1).unwrap();
        assert_eq!(predicate_with_margin(Space::Triebel, &t).unwrap(), (true, None));
    }
}
