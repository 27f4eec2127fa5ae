use num_rational::Ratio;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::wallspace::Wallspace;

/// Largest denominator of the rational grid searched for `kappa`.
pub const KAPPA_DENOMINATOR: u64 = 64;
/// All pairs are scanned up to this many; beyond it a seeded sample is used.
pub const DEFAULT_PAIR_LIMIT: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SampleSpec {
    /// All pairs when there are at most `DEFAULT_PAIR_LIMIT`, otherwise that
    /// many drawn with the seed.
    Default { seed: u64 },
    Explicit(Vec<(usize, usize)>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairSample {
    pub x: usize,
    pub y: usize,
    pub count: usize,
    pub distance: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinearFit {
    /// Best `p/q <= kappa_bound` with `q <= KAPPA_DENOMINATOR`.
    pub kappa: String,
    pub kappa_value: f64,
    /// Exact supremum `min (#(x,y) + eps_max) / d(x,y)` over the sample.
    pub kappa_bound: String,
    pub epsilon: String,
    pub epsilon_value: f64,
    pub eps_max: u64,
    pub holds: bool,
    pub pairs_checked: usize,
    pub seed: Option<u64>,
    /// Pairs attaining `kappa_bound`: names, count, distance.
    pub binding_pairs: Vec<(String, String, usize, u64)>,
    pub note: Option<String>,
    #[serde(skip)]
    pub samples: Vec<PairSample>,
}

fn fmt(r: Ratio<u64>) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn value(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Fits `#(x,y) >= kappa d(x,y) - eps` on the sampled pairs. Any `kappa`
/// fits a finite sample once `eps` is large, so `eps` is capped by
/// `eps_max`; the returned `kappa` is the largest grid value admissible
/// with that cap and `epsilon` the least offset it needs.
pub fn linear_separation_fit(ws: &Wallspace, pairs: &SampleSpec, eps_max: u64) -> Result<LinearFit> {
    let m = ws.require_metric()?;
    let n = ws.num_points();
    let total = n * n.saturating_sub(1) / 2;
    let (chosen, seed): (Vec<(usize, usize)>, Option<u64>) = match pairs {
        SampleSpec::Explicit(p) => {
            for &(x, y) in p {
                ws.check_point(x)?;
                ws.check_point(y)?;
            }
            (p.clone(), None)
        }
        SampleSpec::Default { .. } if total <= DEFAULT_PAIR_LIMIT => {
            ((0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect(), None)
        }
        SampleSpec::Default { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let picks = sample(&mut rng, total, DEFAULT_PAIR_LIMIT);
            (picks.iter().map(|k| unrank(n, k)).collect(), Some(*seed))
        }
    };
    let samples: Vec<PairSample> = chosen
        .into_iter()
        .filter(|&(x, y)| m.d(x, y) > 0)
        .map(|(x, y)| -> Result<PairSample> {
            Ok(PairSample {
                x,
                y,
                count: ws.separation_count(x, y)?,
                distance: m.d(x, y),
            })
        })
        .collect::<Result<_>>()?;
    if samples.is_empty() {
        return Err(Error::Invalid("no pairs of distinct points to fit".into()));
    }
    let ratio = |s: &PairSample| Ratio::new(s.count as u64 + eps_max, s.distance);
    let bound = samples.iter().map(ratio).min().expect("nonempty");
    let kappa = (1..=KAPPA_DENOMINATOR)
        .map(|q| Ratio::new((bound * q).to_integer(), q))
        .max()
        .expect("nonempty range");
    let epsilon = samples
        .iter()
        .map(|s| {
            let need = kappa * s.distance;
            let have = Ratio::from_integer(s.count as u64);
            if need > have {
                need - have
            } else {
                Ratio::from_integer(0)
            }
        })
        .max()
        .expect("nonempty");
    let mut binding_pairs: Vec<_> = samples
        .iter()
        .filter(|s| ratio(s) == bound)
        .map(|s| (ws.point_name(s.x).to_string(), ws.point_name(s.y).to_string(), s.count, s.distance))
        .collect();
    binding_pairs.truncate(64);
    let holds = kappa > Ratio::from_integer(0);
    Ok(LinearFit {
        kappa: fmt(kappa),
        kappa_value: value(kappa),
        kappa_bound: fmt(bound),
        epsilon: fmt(epsilon),
        epsilon_value: value(epsilon),
        eps_max,
        holds,
        pairs_checked: samples.len(),
        seed,
        binding_pairs,
        note: (!holds).then(|| format!("fails for all kappa > 0 with eps <= {eps_max}")),
        samples,
    })
}

/// The `k`-th pair `(x, y)`, `x < y`, in lexicographic order.
fn unrank(n: usize, mut k: usize) -> (usize, usize) {
    let mut x = 0;
    while k >= n - 1 - x {
        k -= n - 1 - x;
        x += 1;
    }
    (x, x + 1 + k)
}
