//! Exact index conditions for embeddings into `FL^r` and for boundedness of
//! Fourier integral operators from Besov / Triebel–Lizorkin spaces into `FL^r`.
//!
//! All comparisons run in exact rational arithmetic (see [`crate::index`]).
//! The Besov and Triebel–Lizorkin predicates are characterisations; the FIO
//! admissibility predicates combine them with the order condition
//! `m ≤ -κ|1/r - 1/2|` and are sufficient conditions.

use alloc::vec::Vec;
use core::fmt;

use num_traits::Signed;

use crate::index::{Exponent, Rational};
use crate::{Error, Result};

/// Index tuple `(p, q, r, s, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexTuple {
    pub p: Exponent,
    pub q: Exponent,
    pub r: Exponent,
    pub s: Rational,
    pub d: u32,
}

impl IndexTuple {
    pub fn new(p: Exponent, q: Exponent, r: Exponent, s: Rational, d: u32) -> Result<Self> {
        if !(1..=2).contains(&d) {
            return Err(Error::UnsupportedDimension(d as usize));
        }
        Ok(Self { p, q, r, s, d })
    }

    /// Parses each component from text (`"inf"`, `"1.5"`, `"4/3"`, …).
    pub fn parse(p: &str, q: &str, r: &str, s: &str, d: u32) -> Result<Self> {
        Self::new(p.parse()?, q.parse()?, r.parse()?, crate::index::parse_rational(s)?, d)
    }

    /// `d(1/r + 1/p - 1)`.
    pub fn critical_smoothness(&self) -> Rational {
        Rational::from_integer(self.d as i128)
            * (self.r.recip() + self.p.recip() - Rational::from_integer(1))
    }

    fn duality_holds(&self) -> bool {
        self.p.recip() + self.r.recip() >= Rational::from_integer(1)
    }

    fn p_at_most_two(&self) -> bool {
        self.p <= two()
    }
}

fn two() -> Exponent {
    Exponent::from_int(2).expect("2 is a valid exponent")
}

/// Which condition decided a predicate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    /// The listed enumerated clauses (1-based) hold.
    Clauses(Vec<u8>),
    /// `p ≤ 2` fails.
    PAboveTwo,
    /// `1/p + 1/r ≥ 1` fails.
    DualityFails,
    /// Base conditions hold but no enumerated clause does.
    NoClause,
    /// The embedding holds but the order condition on `m` fails.
    OrderTooHigh { threshold: Rational },
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decision::Clauses(c) => {
                f.write_str("clause")?;
                if c.len() > 1 {
                    f.write_str("s")?;
                }
                for (i, n) in c.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, " ({n})")?;
                }
                Ok(())
            }
            Decision::PAboveTwo => f.write_str("p <= 2 fails"),
            Decision::DualityFails => f.write_str("1/p + 1/r >= 1 fails"),
            Decision::NoClause => f.write_str("no clause holds"),
            Decision::OrderTooHigh { threshold } => {
                write!(f, "order condition m <= {threshold} fails")
            }
        }
    }
}

/// Boolean outcome plus the condition that decided it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub decision: Decision,
}

impl Verdict {
    fn from_clauses(clauses: Vec<u8>) -> Self {
        if clauses.is_empty() {
            Verdict {
                holds: false,
                decision: Decision::NoClause,
            }
        } else {
            Verdict {
                holds: true,
                decision: Decision::Clauses(clauses),
            }
        }
    }

    fn fail(decision: Decision) -> Self {
        Verdict {
            holds: false,
            decision,
        }
    }
}

/// `B^s_{p,q} ↪ FL^r` iff `1/p + 1/r ≥ 1`, `p ≤ 2` and either
/// (1) `q ≤ r`, `s ≥ d(1/r + 1/p - 1)` or (2) `q > r`, `s > d(1/r + 1/p - 1)`.
pub fn besov_embeds_fl(t: &IndexTuple) -> Verdict {
    if !t.p_at_most_two() {
        return Verdict::fail(Decision::PAboveTwo);
    }
    if !t.duality_holds() {
        return Verdict::fail(Decision::DualityFails);
    }
    let crit = t.critical_smoothness();
    let mut clauses = Vec::new();
    if t.q <= t.r && t.s >= crit {
        clauses.push(1);
    }
    if t.q > t.r && t.s > crit {
        clauses.push(2);
    }
    Verdict::from_clauses(clauses)
}

/// `F^s_{p,q} ↪ FL^r` (`p < ∞`) iff `p ≤ 2`, `1/p + 1/r ≥ 1` and one of
///
/// 1. `r < p`, `s > d(1/p + 1/r - 1)`;
/// 2. `r ≥ p`, `r = p' < q`, `s > d(1/p + 1/r - 1)`;
/// 3. `r ≥ max{p, q}`, `s ≥ d(1/p + 1/r - 1)`;
/// 4. `p ≤ r < p'`, `s ≥ d(1/p + 1/r - 1)`.
///
/// Every satisfied clause is reported.
pub fn triebel_embeds_fl(t: &IndexTuple) -> Result<Verdict> {
    if t.p.is_infinite() {
        return Err(Error::InvalidIndex("Triebel-Lizorkin spaces require p < inf".into()));
    }
    if !t.p_at_most_two() {
        return Ok(Verdict::fail(Decision::PAboveTwo));
    }
    if !t.duality_holds() {
        return Ok(Verdict::fail(Decision::DualityFails));
    }
    let crit = t.critical_smoothness();
    let p_conj = t.p.conjugate();
    let mut clauses = Vec::new();
    if t.r < t.p && t.s > crit {
        clauses.push(1);
    }
    if t.r >= t.p && t.r == p_conj && p_conj < t.q && t.s > crit {
        clauses.push(2);
    }
    if t.r >= t.p.max(t.q) && t.s >= crit {
        clauses.push(3);
    }
    if t.p <= t.r && t.r < p_conj && t.s >= crit {
        clauses.push(4);
    }
    Ok(Verdict::from_clauses(clauses))
}

/// `-κ|1/r - 1/2|` for `1 ≤ r ≤ ∞`.
pub fn required_order_fl_exact(r: Exponent, kappa: u32) -> Result<Rational> {
    if !r.is_banach() {
        return Err(Error::InvalidIndex(alloc::format!("r = {r} must satisfy 1 <= r <= inf")));
    }
    Ok(-Rational::from_integer(kappa as i128) * (r.recip() - Rational::new(1, 2)).abs())
}

/// Strict threshold `-κ|1/q - 1/2| - d(1/q - 1/p)` for `1 ≤ q < p ≤ ∞`.
pub fn required_order_fl_pq_exact(p: Exponent, q: Exponent, kappa: u32, d: u32) -> Result<Rational> {
    if !q.is_banach() {
        return Err(Error::InvalidIndex(alloc::format!("q = {q} must satisfy q >= 1")));
    }
    if q >= p {
        return Err(Error::InvalidIndex(alloc::format!("need q < p, got q = {q}, p = {p}")));
    }
    let base = required_order_fl_exact(q, kappa)?;
    Ok(base - Rational::from_integer(d as i128) * (q.recip() - p.recip()))
}

fn admissible(embedding: Verdict, t: &IndexTuple, m: Rational, kappa: u32) -> Result<Verdict> {
    if kappa > t.d {
        return Err(Error::InvalidIndex(alloc::format!("rank {kappa} exceeds dimension {}", t.d)));
    }
    let threshold = required_order_fl_exact(t.r, kappa)?;
    if !embedding.holds {
        return Ok(embedding);
    }
    if m > threshold {
        return Ok(Verdict::fail(Decision::OrderTooHigh { threshold }));
    }
    Ok(embedding)
}

/// Sufficient condition for `T ∈ I^m` with SSFC rank `κ` to map
/// `B^s_{p,q} → FL^r`: the Besov embedding plus `m ≤ -κ|1/r - 1/2|`.
pub fn fio_besov_to_fl_admissible(t: &IndexTuple, m: Rational, kappa: u32) -> Result<Verdict> {
    admissible(besov_embeds_fl(t), t, m, kappa)
}

/// Triebel–Lizorkin companion of [`fio_besov_to_fl_admissible`].
pub fn fio_triebel_to_fl_admissible(t: &IndexTuple, m: Rational, kappa: u32) -> Result<Verdict> {
    admissible(triebel_embeds_fl(t)?, t, m, kappa)
}
