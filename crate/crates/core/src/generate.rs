//! Seeded random instances.
//!
//! Every model draws `n` independent pairs. Pair `k` owns a private
//! Xoshiro256++ stream seeded from `(seed, k)`, so rejecting and redrawing one
//! pair never shifts the others. Arrival order is start order: the drawn
//! intervals are sorted before they are handed out.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::interval::{validate_instance, Instance, Interval};
use crate::seed::mix_seed;

/// Consecutive rejected draws after which generation gives up.
pub const REJECTION_LIMIT: u64 = 1_000_000;

/// The eight sweep distributions of the `paper` suite, as spec strings.
pub const STUDY_PRESETS: [&str; 8] = [
    "u:0.1",
    "u:0.3",
    "u:0.5",
    "u:0.8",
    "g:0:1:1:0.2",
    "g:0:1:1:0.4",
    "g:0:5:1:0.2",
    "g:0:5:1:0.4",
];

/// A stochastic interval model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistributionSpec {
    /// `(a, b)` uniform on the unit square, interval `[min, max]`.
    UniformSquare,
    /// Uniform on the part of the unit square with `|a - b| <= ell`.
    UniformMaxLen {
        /// Maximum length, in `(0, 1]`.
        ell: f64,
    },
    /// Independent normal center and length; non-positive lengths are redrawn.
    GaussianCL {
        /// Mean of the center.
        mu_c: f64,
        /// Standard deviation of the center.
        sigma_c: f64,
        /// Mean of the length.
        mu_l: f64,
        /// Standard deviation of the length.
        sigma_l: f64,
    },
    /// `[u, u + length]` with `u` uniform on `[0, 1 - length]`; no interval nests in another.
    FixedLen {
        /// Common length, in `(0, 1)`.
        length: f64,
    },
}

/// Failure to generate an instance.
#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum GenerateError {
    /// `n` was zero.
    #[error("instance size must be at least 1")]
    EmptyRequest,
    /// A distribution parameter is out of range.
    #[error("invalid distribution parameter: {0}")]
    InvalidParameter(&'static str),
    /// Rejection sampling kept failing for one pair.
    #[error("pair {pair}: {REJECTION_LIMIT} consecutive draws were rejected")]
    RejectionLimit {
        /// The pair index.
        pair: usize,
    },
}

/// A spec string that could not be parsed.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse distribution `{input}`: {reason}")]
pub struct SpecParseError {
    input: alloc::string::String,
    reason: &'static str,
}

impl DistributionSpec {
    /// Checks parameter ranges.
    pub fn check(&self) -> Result<(), GenerateError> {
        use GenerateError::InvalidParameter as Bad;
        match *self {
            Self::UniformSquare => Ok(()),
            Self::UniformMaxLen { ell } if !(ell > 0.0 && ell <= 1.0) => {
                Err(Bad("ell must lie in (0, 1]"))
            }
            Self::GaussianCL {
                mu_c,
                sigma_c,
                mu_l,
                sigma_l,
            } => {
                if !(mu_c.is_finite() && mu_l.is_finite()) {
                    Err(Bad("means must be finite"))
                } else if !(sigma_c > 0.0 && sigma_c.is_finite()) {
                    Err(Bad("sigma_c must be positive"))
                } else if !(sigma_l > 0.0 && sigma_l.is_finite()) {
                    Err(Bad("sigma_l must be positive"))
                } else {
                    Ok(())
                }
            }
            Self::FixedLen { length } if !(length > 0.0 && length < 1.0) => {
                Err(Bad("length must lie in (0, 1)"))
            }
            _ => Ok(()),
        }
    }

    /// True for the Gaussian model, whose endpoints are not confined to `[0, 1]`.
    pub fn is_gaussian(&self) -> bool {
        matches!(self, Self::GaussianCL { .. })
    }

    fn draw(&self, rng: &mut Xoshiro256PlusPlus, pair: usize) -> Result<(f64, f64), GenerateError> {
        let mut rejected = 0u64;
        let mut reject = || {
            rejected += 1;
            if rejected >= REJECTION_LIMIT {
                Err(GenerateError::RejectionLimit { pair })
            } else {
                Ok(())
            }
        };
        loop {
            let (lo, hi) = match *self {
                Self::UniformSquare => square_pair(rng),
                Self::UniformMaxLen { ell } => {
                    let (lo, hi) = square_pair(rng);
                    if hi - lo > ell {
                        reject()?;
                        continue;
                    }
                    (lo, hi)
                }
                Self::GaussianCL {
                    mu_c,
                    sigma_c,
                    mu_l,
                    sigma_l,
                } => {
                    let center = mu_c + sigma_c * standard_normal(rng);
                    let length = loop {
                        let l = mu_l + sigma_l * standard_normal(rng);
                        if l > 0.0 {
                            break l;
                        }
                        reject()?;
                    };
                    (center - 0.5 * length, center + 0.5 * length)
                }
                Self::FixedLen { length } => {
                    let u = rng.random::<f64>() * (1.0 - length);
                    (u, u + length)
                }
            };
            if lo < hi {
                return Ok((lo, hi));
            }
            reject()?;
        }
    }
}

fn square_pair(rng: &mut Xoshiro256PlusPlus) -> (f64, f64) {
    let a: f64 = rng.random();
    let b: f64 = rng.random();
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Marsaglia's polar method; the second variate of each accepted point is dropped.
fn standard_normal(rng: &mut Xoshiro256PlusPlus) -> f64 {
    loop {
        let u = 2.0 * rng.random::<f64>() - 1.0;
        let v = 2.0 * rng.random::<f64>() - 1.0;
        let s = u * u + v * v;
        if s > 0.0 && s < 1.0 {
            return u * libm::sqrt(-2.0 * libm::log(s) / s);
        }
    }
}

/// Draws an instance of `n` items from `spec`.
///
/// Deterministic in `(spec, n, seed)`. A pair sharing an endpoint value with
/// another pair is redrawn (the later pair, from its own stream) until all
/// endpoints are distinct.
pub fn generate(spec: &DistributionSpec, n: usize, seed: u64) -> Result<Instance, GenerateError> {
    if n == 0 {
        return Err(GenerateError::EmptyRequest);
    }
    spec.check()?;

    let mut streams: Vec<Xoshiro256PlusPlus> = (0..n as u64)
        .map(|k| Xoshiro256PlusPlus::seed_from_u64(mix_seed(seed, &[k])))
        .collect();
    let mut pairs = Vec::with_capacity(n);
    for (k, rng) in streams.iter_mut().enumerate() {
        pairs.push(spec.draw(rng, k)?);
    }

    resolve_collisions(&mut pairs, |k| spec.draw(&mut streams[k], k))?;

    let inst = validate_instance(
        pairs
            .into_iter()
            .enumerate()
            .map(|(k, (a, b))| Interval::new(k, a, b)),
    )
    .expect("generated endpoints are finite and distinct");
    Ok(inst)
}

/// Redraws pairs until no endpoint value is shared by two pairs.
///
/// For each clash the pair with the larger index is redrawn.
fn resolve_collisions<F>(pairs: &mut [(f64, f64)], mut redraw: F) -> Result<(), GenerateError>
where
    F: FnMut(usize) -> Result<(f64, f64), GenerateError>,
{
    loop {
        let mut endpoints: Vec<(f64, usize)> = pairs
            .iter()
            .enumerate()
            .flat_map(|(k, &(a, b))| [(a, k), (b, k)])
            .collect();
        endpoints.sort_unstable_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
        let mut clashing: Vec<usize> = endpoints
            .windows(2)
            .filter(|w| w[0].0 == w[1].0)
            .map(|w| w[0].1.max(w[1].1))
            .collect();
        if clashing.is_empty() {
            return Ok(());
        }
        clashing.sort_unstable();
        clashing.dedup();
        for k in clashing {
            pairs[k] = redraw(k)?;
        }
    }
}

impl fmt::Display for DistributionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::UniformSquare => f.write_str("usq"),
            Self::UniformMaxLen { ell } => write!(f, "u:{ell}"),
            Self::GaussianCL {
                mu_c,
                sigma_c,
                mu_l,
                sigma_l,
            } => write!(f, "g:{mu_c}:{sigma_c}:{mu_l}:{sigma_l}"),
            Self::FixedLen { length } => write!(f, "fixed:{length}"),
        }
    }
}

impl FromStr for DistributionSpec {
    type Err = SpecParseError;

    /// Parses `usq`, `u:<ell>`, `g:<mu_c>:<sigma_c>:<mu_l>:<sigma_l>` or `fixed:<len>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fail = |reason| SpecParseError {
            input: s.into(),
            reason,
        };
        let mut parts = s.trim().split(':');
        let kind = parts.next().unwrap_or_default();
        let args = parts
            .map(|p| p.parse::<f64>())
            .collect::<Result<Vec<f64>, _>>()
            .map_err(|_| fail("parameters must be decimal numbers"))?;
        let spec = match (kind, args.as_slice()) {
            ("usq", []) => Self::UniformSquare,
            ("u", &[ell]) => Self::UniformMaxLen { ell },
            ("g", &[mu_c, sigma_c, mu_l, sigma_l]) => Self::GaussianCL {
                mu_c,
                sigma_c,
                mu_l,
                sigma_l,
            },
            ("fixed", &[length]) => Self::FixedLen { length },
            ("usq" | "u" | "g" | "fixed", _) => return Err(fail("wrong number of parameters")),
            _ => return Err(fail("unknown distribution kind")),
        };
        spec.check().map_err(|_| fail("parameter out of range"))?;
        Ok(spec)
    }
}
