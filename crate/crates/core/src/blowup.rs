//! Anti-pluricanonical sections of blow-ups of `P^n` at finitely many points.
//!
//! Sections of `-kK_M` on the blow-up of `P^n` at `q_1, ..., q_v` are the
//! polynomials of degree at most `(n+1)k` on an affine chart containing all
//! points whose partial derivatives of order `< (n-1)k` vanish at every
//! `q_i`. The dimension is the monomial count minus the rank of the matrix of
//! those derivative conditions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact_linalg::{binomial_usize, rank, rat, BigRat, RatMatrix};
use crate::surface_invariants::{h1_from_rr, invariants_blowup_p2};

/// Generic coordinates are integers drawn from `[-GENERIC_COORD_BOUND, GENERIC_COORD_BOUND]`.
pub const GENERIC_COORD_BOUND: i64 = 1_000_000;

/// Resample limit for [`ConfigurationKind::Generic`]. Hitting it means the
/// sampler is broken; a bad draw at this coordinate range is vanishingly rare.
pub const GENERIC_ATTEMPTS: u32 = 64;

/// Number of cubic monomials in two variables.
const PLANE_CUBICS: usize = 10;

/// `v` pairwise distinct points of affine `n`-space with rational
/// coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfiguration {
    n: usize,
    points: Vec<Vec<BigRat>>,
}

impl PointConfiguration {
    pub fn new(n: usize, points: Vec<Vec<BigRat>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionTooSmall(0));
        }
        for (index, p) in points.iter().enumerate() {
            if p.len() != n {
                return Err(Error::CoordinateCount {
                    index,
                    got: p.len(),
                    expected: n,
                });
            }
        }
        check_distinct(&points)?;
        Ok(Self { n, points })
    }

    /// Plane configuration from integer coordinates.
    pub fn plane(points: &[(i64, i64)]) -> Result<Self> {
        Self::new(2, points.iter().map(|&(x, y)| vec![rat(x), rat(y)]).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn v(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Vec<BigRat>] {
        &self.points
    }

    pub fn with_point(&self, point: Vec<BigRat>) -> Result<Self> {
        let mut points = self.points.clone();
        points.push(point);
        Self::new(self.n, points)
    }

    pub fn with_replaced(&self, index: usize, point: Vec<BigRat>) -> Result<Self> {
        let mut points = self.points.clone();
        points[index] = point;
        Self::new(self.n, points)
    }

    /// Applies `q -> A q + b` to every point. `A` is row-major `n x n`;
    /// the caller is responsible for invertibility if distinctness must be kept.
    pub fn map_affine(&self, linear: &[BigRat], shift: &[BigRat]) -> Result<Self> {
        let n = self.n;
        assert_eq!(linear.len(), n * n);
        assert_eq!(shift.len(), n);
        let points = self
            .points
            .iter()
            .map(|q| {
                (0..n)
                    .map(|i| {
                        let mut s = shift[i].clone();
                        for (j, qj) in q.iter().enumerate() {
                            s += &linear[i * n + j] * qj;
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        Self::new(n, points)
    }

    /// One point per line, coordinates separated by spaces.
    pub fn to_point_file(&self) -> String {
        let mut out = String::new();
        for p in &self.points {
            let coords: Vec<String> = p.iter().map(|x| x.to_string()).collect();
            writeln!(out, "{}", coords.join(" ")).unwrap();
        }
        out
    }
}

fn check_distinct(points: &[Vec<BigRat>]) -> Result<()> {
    for (i, p) in points.iter().enumerate() {
        if let Some(j) = points[i + 1..].iter().position(|q| q == p) {
            return Err(Error::DuplicatePoint {
                first: i,
                second: i + 1 + j,
            });
        }
    }
    Ok(())
}

/// Parses the point-file format: one point per line, coordinates given as
/// integers or `p/q` and separated by whitespace. Blank lines and lines
/// starting with `#` are skipped. The dimension is taken from the first
/// point.
pub fn parse_points(text: &str) -> Result<PointConfiguration> {
    let mut points: Vec<Vec<BigRat>> = Vec::new();
    let mut n = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let coords = line
            .split_whitespace()
            .map(|tok| {
                BigRational::from_str(tok).map_err(|e| Error::Parse {
                    line: line_no,
                    message: format!("bad coordinate {tok:?}: {e}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        match n {
            None => n = Some(coords.len()),
            Some(expected) if expected != coords.len() => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected {expected} coordinates, found {}", coords.len()),
                })
            }
            Some(_) => {}
        }
        points.push(coords);
    }
    let n = n.ok_or(Error::EmptyConfiguration)?;
    PointConfiguration::new(n, points)
}

/// Exponent vectors of total degree at most `max_degree` in `n` variables,
/// graded, and lexicographic with `z_1 > ... > z_n` within each degree.
pub fn monomials(n: usize, max_degree: usize) -> Vec<Vec<u32>> {
    fn fill(rest: usize, degree: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 1 {
            prefix.push(degree as u32);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=degree).rev() {
            prefix.push(e as u32);
            fill(rest - 1, degree - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
        return out;
    }
    for d in 0..=max_degree {
        fill(n, d, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

/// `dim Gamma(-kK_{P^n}) = C((n+1)k + n, n)`.
pub fn monomial_count(n: usize, k: u32) -> usize {
    binomial_usize(((n + 1) * k as usize + n) as u64, n as u64)
}

fn condition_order(n: usize, k: u32) -> usize {
    (n - 1) * k as usize
}

/// Rows are `(point, alpha)` with `|alpha| < (n-1)k`, point-major; columns
/// are monomials `z^beta` with `|beta| <= (n+1)k`. The entry is
/// `d^alpha(z^beta)` evaluated at the point.
#[derive(Clone, Debug)]
pub struct JetConditionMatrix {
    config: PointConfiguration,
    k: u32,
    conditions: Vec<(usize, Vec<u32>)>,
    monomials: Vec<Vec<u32>>,
    matrix: RatMatrix,
}

impl JetConditionMatrix {
    pub fn config(&self) -> &PointConfiguration {
        &self.config
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Row labels: point index and derivative multi-index.
    pub fn conditions(&self) -> &[(usize, Vec<u32>)] {
        &self.conditions
    }

    /// Column labels.
    pub fn monomials(&self) -> &[Vec<u32>] {
        &self.monomials
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        rank(&self.matrix)
    }
}

/// `d^alpha z^beta` at `q`: `prod_j beta_j! / (beta_j - alpha_j)! * q_j^(beta_j - alpha_j)`.
fn derivative_at(alpha: &[u32], beta: &[u32], q: &[BigRat]) -> BigRat {
    if alpha.iter().zip(beta).any(|(a, b)| a > b) {
        return BigRat::zero();
    }
    let mut coeff = BigInt::one();
    let mut value = BigRat::one();
    for ((&a, &b), x) in alpha.iter().zip(beta).zip(q) {
        for f in (b - a + 1)..=b {
            coeff *= f;
        }
        value *= num_traits::pow(x.clone(), (b - a) as usize);
    }
    value * BigRat::from_integer(coeff)
}

pub fn jet_matrix(config: &PointConfiguration, k: u32) -> Result<JetConditionMatrix> {
    let n = config.n();
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    if k == 0 {
        return Err(Error::NonPositivePower);
    }
    let order = condition_order(n, k);
    let alphas = monomials(n, order - 1);
    let betas = monomials(n, (n + 1) * k as usize);

    let mut conditions = Vec::with_capacity(config.v() * alphas.len());
    let mut entries = Vec::with_capacity(config.v() * alphas.len() * betas.len());
    for (pi, q) in config.points().iter().enumerate() {
        for alpha in &alphas {
            conditions.push((pi, alpha.clone()));
            entries.extend(betas.iter().map(|beta| derivative_at(alpha, beta, q)));
        }
    }
    let matrix = RatMatrix::from_vec(conditions.len(), betas.len(), entries);
    Ok(JetConditionMatrix {
        config: config.clone(),
        k,
        conditions,
        monomials: betas,
        matrix,
    })
}

/// `h0(-kK_M) = C((n+1)k+n, n) - rank(jet conditions)`.
pub fn h0_blowup(config: &PointConfiguration, k: u32) -> Result<usize> {
    let jets = jet_matrix(config, k)?;
    Ok(monomial_count(config.n(), k) - jets.rank())
}

/// `h1(2K_M)` for a blow-up of `P^2`, through Riemann-Roch with
/// `h0(2K) = 0` and `h2(2K) = h0(-K)`.
pub fn h1_2k(config: &PointConfiguration) -> Result<u64> {
    if config.n() != 2 {
        return Err(Error::NotPlanar(config.n()));
    }
    let h0_minus_k = h0_blowup(config, 1)? as u64;
    h1_from_rr(2, 0, h0_minus_k, &invariants_blowup_p2(config.v()))
}

/// Closed interval `h1(2K)` must lie in for `v` points: `{0}` for `v <= 4`,
/// `[max(0, v - 10), v - 4]` otherwise.
pub fn h1_2k_range(v: usize) -> (u64, u64) {
    if v <= 4 {
        (0, 0)
    } else {
        (v.saturating_sub(10) as u64, (v - 4) as u64)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConfigurationKind {
    /// Seeded pseudorandom integer points, certified by rank.
    Generic,
    /// `(i, 0)` for `i = 1..=v`.
    Collinear,
    /// `(i, i^2)` for `i = 1..=v`.
    OnConic,
    Custom(Vec<Vec<BigRat>>),
}

/// Deterministic stream for the `attempt`-th draw of `step` under `seed`.
fn stream(seed: u64, step: u32, attempt: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((u64::from(step) << 32) | u64::from(attempt));
    rng
}

fn sample_plane_point(rng: &mut ChaCha8Rng) -> Vec<BigRat> {
    (0..2)
        .map(|_| rat(rng.gen_range(-GENERIC_COORD_BOUND..=GENERIC_COORD_BOUND)))
        .collect()
}

fn cubic_rank(config: &PointConfiguration) -> usize {
    jet_matrix(config, 1)
        .expect("plane configurations have valid k = 1 jet matrices")
        .rank()
}

/// Plane configurations of `v` points of the requested kind.
///
/// Generic configurations are resampled until the `v x 10` cubic evaluation
/// matrix reaches rank `min(v, 10)`; the output is thereby certified.
pub fn generate_configuration(
    kind: &ConfigurationKind,
    v: usize,
    seed: u64,
) -> Result<PointConfiguration> {
    if v == 0 {
        return Err(Error::EmptyConfiguration);
    }
    match kind {
        ConfigurationKind::Collinear => {
            PointConfiguration::plane(&(1..=v as i64).map(|i| (i, 0)).collect::<Vec<_>>())
        }
        ConfigurationKind::OnConic => {
            PointConfiguration::plane(&(1..=v as i64).map(|i| (i, i * i)).collect::<Vec<_>>())
        }
        ConfigurationKind::Custom(points) => {
            if points.len() != v {
                return Err(Error::PointCountMismatch {
                    got: points.len(),
                    expected: v,
                });
            }
            let n = points.first().map_or(2, |p| p.len());
            PointConfiguration::new(n, points.clone())
        }
        ConfigurationKind::Generic => {
            let target = v.min(PLANE_CUBICS);
            for attempt in 0..GENERIC_ATTEMPTS {
                let mut rng = stream(seed, 0, attempt);
                let points = (0..v).map(|_| sample_plane_point(&mut rng)).collect();
                let Ok(config) = PointConfiguration::new(2, points) else {
                    continue;
                };
                if cubic_rank(&config) == target {
                    return Ok(config);
                }
            }
            Err(Error::SamplerExhausted {
                target,
                attempts: GENERIC_ATTEMPTS,
            })
        }
    }
}

/// A plane configuration certified to have `h0(-K) = dimension`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub dimension: usize,
    pub rank: usize,
    /// How many collinear points were replaced by sampled ones.
    pub replaced: usize,
    pub config: PointConfiguration,
}

/// [`achievable_dims_seeded`] with seed 0.
pub fn achievable_dims(v: usize, search_budget: u32) -> Result<Vec<Witness>> {
    achievable_dims_seeded(v, search_budget, 0)
}

/// Witnesses for every `h0(-K)` value in `[max(10 - v, 0), 6]`.
///
/// Starts from `v` collinear points (cubic rank 4) and replaces points one
/// at a time with sampled ones, accepting a replacement only when it raises
/// the rank by exactly one. Each replacement changes one row, so the rank
/// moves by at most one and every intermediate value is visited. Randomness
/// for the `a`-th candidate at step `s` comes from the stream `(seed, s+1, a)`.
pub fn achievable_dims_seeded(v: usize, search_budget: u32, seed: u64) -> Result<Vec<Witness>> {
    if v <= 4 {
        return Err(Error::ForcedDimension(v));
    }
    let max_rank = v.min(PLANE_CUBICS);
    let mut config = generate_configuration(&ConfigurationKind::Collinear, v, seed)?;
    let mut current = cubic_rank(&config);
    let mut witnesses = vec![Witness {
        dimension: PLANE_CUBICS - current,
        rank: current,
        replaced: 0,
        config: config.clone(),
    }];

    for step in 0..v {
        if current == max_rank {
            break;
        }
        let mut accepted = None;
        for attempt in 0..search_budget {
            let mut rng = stream(seed, step as u32 + 1, attempt);
            let Ok(candidate) = config.with_replaced(step, sample_plane_point(&mut rng)) else {
                continue;
            };
            let r = cubic_rank(&candidate);
            if r == current + 1 {
                accepted = Some((candidate, r));
                break;
            }
        }
        let Some((candidate, r)) = accepted else {
            return Err(Error::WitnessNotFound {
                target: PLANE_CUBICS - (current + 1),
                budget: search_budget,
            });
        };
        config = candidate;
        current = r;
        witnesses.push(Witness {
            dimension: PLANE_CUBICS - current,
            rank: current,
            replaced: step + 1,
            config: config.clone(),
        });
    }

    if current != max_rank {
        return Err(Error::WitnessNotFound {
            target: PLANE_CUBICS - max_rank,
            budget: search_budget,
        });
    }
    witnesses.sort_by_key(|w| w.dimension);
    Ok(witnesses)
}
