//! Synthetic temporal networks in the two traffic shapes the tasks need:
//! email-like exchanges with quick replies, and a single user switching
//! between apps.

use std::fmt;
use std::str::FromStr;

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{NodeId, TemporalGraph, Timestamp};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    EmailLike,
    SwitchLike,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::EmailLike => "email",
            Family::SwitchLike => "switch",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "email" | "email-like" => Ok(Family::EmailLike),
            "switch" | "switch-like" => Ok(Family::SwitchLike),
            other => Err(Error::Config(format!("unknown synthetic family `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmailParams {
    /// Chance that a message triggers a reply in the reverse direction.
    pub p_reply: f64,
    /// Replies arrive 1..=max_reply_lag seconds after the message.
    pub max_reply_lag: Timestamp,
    /// Node activity weight is `(rank + 1)^-hub_exponent`.
    pub hub_exponent: f64,
}

impl Default for EmailParams {
    fn default() -> Self {
        EmailParams {
            p_reply: 0.5,
            max_reply_lag: 900,
            hub_exponent: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SwitchParams {
    /// Mean number of switches per usage session.
    pub mean_session_len: f64,
    /// Seconds between switches inside a session, drawn from this range.
    pub gap_range: (Timestamp, Timestamp),
    /// Preferred successors per app.
    pub favorites: usize,
    /// Chance the next app is one of the current app's favourites.
    pub p_favorite: f64,
}

impl Default for SwitchParams {
    fn default() -> Self {
        SwitchParams {
            mean_session_len: 8.0,
            gap_range: (2, 90),
            favorites: 3,
            p_favorite: 0.8,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FamilyParams {
    Email(EmailParams),
    Switch(SwitchParams),
}

impl FamilyParams {
    pub fn default_for(family: Family) -> Self {
        match family {
            Family::EmailLike => FamilyParams::Email(EmailParams::default()),
            Family::SwitchLike => FamilyParams::Switch(SwitchParams::default()),
        }
    }

    pub fn family(&self) -> Family {
        match self {
            FamilyParams::Email(_) => Family::EmailLike,
            FamilyParams::Switch(_) => Family::SwitchLike,
        }
    }
}

/// Generates `m` edges on nodes `0..n` spread over `[0, span)` with the
/// family's default parameters.
pub fn gen_synthetic(
    family: Family,
    n: usize,
    m: usize,
    span: Timestamp,
    seed: u64,
) -> Result<TemporalGraph> {
    gen_synthetic_with(&FamilyParams::default_for(family), n, m, span, seed)
}

pub fn gen_synthetic_with(
    params: &FamilyParams,
    n: usize,
    m: usize,
    span: Timestamp,
    seed: u64,
) -> Result<TemporalGraph> {
    if n < 2 || m < 1 {
        return Err(Error::InvalidInput(format!(
            "synthetic graph needs n >= 2 and m >= 1 (got n={n}, m={m})"
        )));
    }
    let span = span.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triples = match params {
        FamilyParams::Email(p) => email_like(p, n, m, span, &mut rng)?,
        FamilyParams::Switch(p) => switch_like(p, n, m, span, &mut rng),
    };
    let id = format!("{}-{seed}", params.family());
    Ok(TemporalGraph::from_triples(id, triples))
}

fn email_like(
    p: &EmailParams,
    n: usize,
    m: usize,
    span: Timestamp,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<(NodeId, NodeId, Timestamp)>> {
    let weights: Vec<f64> = (0..n)
        .map(|i| ((i + 1) as f64).powf(-p.hub_exponent))
        .collect();
    let pick = WeightedIndex::new(&weights)
        .map_err(|e| Error::InvalidInput(format!("node weights: {e}")))?;
    // shuffle so hub identity is not tied to the smallest ids
    let mut label: Vec<NodeId> = (0..n as NodeId).collect();
    label.shuffle(rng);

    let mut out = Vec::with_capacity(m);
    while out.len() < m {
        let s = pick.sample(rng);
        let mut d = pick.sample(rng);
        while d == s {
            d = pick.sample(rng);
        }
        let t = rng.gen_range(0..span);
        out.push((label[s], label[d], t));
        if out.len() < m && rng.gen_bool(p.p_reply.clamp(0.0, 1.0)) {
            let lag = rng.gen_range(1..=p.max_reply_lag.max(1));
            out.push((label[d], label[s], t + lag));
        }
    }
    Ok(out)
}

fn switch_like(
    p: &SwitchParams,
    n: usize,
    m: usize,
    span: Timestamp,
    rng: &mut ChaCha8Rng,
) -> Vec<(NodeId, NodeId, Timestamp)> {
    let favorites: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            let mut others: Vec<usize> = (0..n).filter(|&b| b != a).collect();
            others.shuffle(rng);
            others.truncate(p.favorites.max(1));
            others
        })
        .collect();

    let sessions = ((m as f64 / p.mean_session_len.max(1.0)).ceil() as usize).max(1);
    let mut starts: Vec<Timestamp> = (0..sessions).map(|_| rng.gen_range(0..span)).collect();
    starts.sort_unstable();
    let p_end = 1.0 / p.mean_session_len.max(1.0);
    let (gap_lo, gap_hi) = (p.gap_range.0.max(1), p.gap_range.1.max(p.gap_range.0.max(1)));

    let mut current = rng.gen_range(0..n);
    let mut t = starts[0];
    let mut session = 0usize;
    let mut out = Vec::with_capacity(m);
    while out.len() < m {
        let next = if rng.gen_bool(p.p_favorite.clamp(0.0, 1.0)) {
            // earlier favourites are more likely
            let favs = &favorites[current];
            let k = rng.gen_range(0..favs.len());
            favs[rng.gen_range(0..=k)]
        } else {
            let mut b = rng.gen_range(0..n - 1);
            if b >= current {
                b += 1;
            }
            b
        };
        out.push((current as NodeId, next as NodeId, t));
        current = next;
        if rng.gen_bool(p_end) && session + 1 < starts.len() {
            session += 1;
            t = starts[session].max(t + 1);
        } else {
            t += rng.gen_range(gap_lo..=gap_hi);
        }
    }
    out
}
