//! Thurston-measure estimates from censuses, ball volumes of homogeneous
//! measures, and orbit-counting experiments.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::current::RationalCurrent;
use crate::dt::ArcSystem;
use crate::error::{Error, Result};
use crate::hyperbolic::{symmetric_torus_spec, HyperbolicStructure};
use crate::mcg::{orbit_ball, MappingClass};
use crate::quadrature;
use crate::surface::{RibbonSpine, SurfaceSig};

/// `int over {t_i >= 0, sum t_i <= 1} of (1 - sum t_i)^N dt_1..dt_n`, next
/// to the closed form `1/((N+n)(n-1)!)` that is sometimes quoted for it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimplexConstant {
    #[serde(rename = "N")]
    pub big_n: u32,
    pub n: u32,
    #[serde(serialize_with = "ratio_text")]
    pub exact: BigRational,
    #[serde(serialize_with = "ratio_text")]
    pub quoted: BigRational,
    pub matches_quoted: bool,
}

fn ratio_text<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl SimplexConstant {
    pub fn exact_f64(&self) -> f64 {
        self.exact.to_f64().expect("finite")
    }
}

/// Exact value by integrating out one coordinate at a time: scaling the
/// remaining `n - 1` coordinates by `1 - t_n` gives
/// `I(N, n) = I(N, n - 1) * int_0^1 (1 - t)^(N + n - 1) dt`.
pub fn simplex_integral(big_n: u32, n: u32) -> Result<SimplexConstant> {
    if n == 0 {
        return Err(Error::NonPositive { name: "n", value: 0.0 });
    }
    let int = |x: u64| BigRational::from_integer(BigInt::from(x));
    let mut exact = int(1) / int(big_n as u64 + 1);
    for k in 2..=n as u64 {
        exact /= int(big_n as u64 + k);
    }
    let fact: u64 = (1..n as u64).product();
    let quoted = BigRational::one() / int((big_n as u64 + n as u64) * fact);
    Ok(SimplexConstant {
        big_n,
        n,
        matches_quoted: exact == quoted,
        exact,
        quoted,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonteCarlo {
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
}

/// Monte-Carlo estimate of the simplex integral: points are drawn uniformly
/// from the simplex as normalized exponentials and the integrand is scaled
/// by the simplex volume `1/n!`.
pub fn simplex_integral_monte_carlo(big_n: u32, n: u32, samples: usize, seed: u64) -> Result<MonteCarlo> {
    if n == 0 || samples < 2 {
        return Err(Error::NonPositive {
            name: if n == 0 { "n" } else { "samples - 1" },
            value: 0.0,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vol = 1.0 / (1..=n as u64).map(|k| k as f64).product::<f64>();
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for _ in 0..samples {
        let mut e = [0.0f64; 64];
        let mut total = 0.0;
        for x in e.iter_mut().take(n as usize + 1) {
            *x = -(1.0 - rng.gen::<f64>()).ln();
            total += *x;
        }
        let slack = e[n as usize] / total;
        let y = vol * slack.powi(big_n as i32);
        sum += y;
        sum_sq += y * y;
    }
    let k = samples as f64;
    let mean = sum / k;
    let var = ((sum_sq / k - mean * mean) * k / (k - 1.0)).max(0.0);
    Ok(MonteCarlo {
        mean,
        std_error: (var / k).sqrt(),
        samples,
    })
}

fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if !(value > 0.0) || !value.is_finite() {
        return Err(Error::NonPositive { name, value });
    }
    Ok(())
}

/// `m * L^(N+n) * I(N, n) / prod l_j`: volume of the ball of radius `L` for
/// the measure on the full lamination space that adds boundary weights.
pub fn ml_ball_volume(l: f64, m_th_b: f64, boundary_lengths: &[f64], big_n: u32) -> Result<f64> {
    check_positive("L", l)?;
    check_positive("m_Th(B)", m_th_b)?;
    if boundary_lengths.is_empty() {
        return Err(Error::Empty("boundary lengths"));
    }
    for &x in boundary_lengths {
        check_positive("boundary length", x)?;
    }
    let n = boundary_lengths.len() as u32;
    let c = simplex_integral(big_n, n)?.exact_f64();
    let prod: f64 = boundary_lengths.iter().product();
    Ok(m_th_b * l.powi((big_n + n) as i32) * c / prod)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HomogeneousVolume {
    pub d: f64,
    #[serde(rename = "N_R")]
    pub n_r: u32,
    #[serde(rename = "L")]
    pub l: f64,
    pub ell_c: f64,
    pub m_th_b: f64,
    pub value: f64,
}

fn check_homogeneous(d: f64, n_r: u32, l: f64, ell_c: f64, m_th_b: f64) -> Result<()> {
    check_positive("L", l)?;
    check_positive("ell_c", ell_c)?;
    check_positive("m_Th(B)", m_th_b)?;
    if !(d > n_r as f64) {
        return Err(Error::NotLocallyFinite { d, n: n_r });
    }
    Ok(())
}

/// `m * N! / (d (d-1) ... (d-N)) * L^d / l^(d-N)` with `N = N_R`.
pub fn homogeneous_ball_volume(d: f64, n_r: u32, l: f64, ell_c: f64, m_th_b: f64) -> Result<HomogeneousVolume> {
    check_homogeneous(d, n_r, l, ell_c, m_th_b)?;
    let mut coeff = 1.0;
    for j in 0..=n_r {
        coeff *= if j == 0 { 1.0 } else { j as f64 } / (d - j as f64);
    }
    let value = m_th_b * coeff * l.powf(d) / ell_c.powf(d - n_r as f64);
    Ok(HomogeneousVolume {
        d,
        n_r,
        l,
        ell_c,
        m_th_b,
        value,
    })
}

/// The same volume as `m * int_0^(L/l) t^(d-N-1) (L - t l)^N dt`, by
/// adaptive quadrature.
pub fn homogeneous_ball_volume_quadrature(
    d: f64,
    n_r: u32,
    l: f64,
    ell_c: f64,
    m_th_b: f64,
) -> Result<quadrature::Quadrature> {
    check_homogeneous(d, n_r, l, ell_c, m_th_b)?;
    let e = d - n_r as f64 - 1.0;
    let mut q = quadrature::integrate(
        |t| t.powf(e) * (l - t * ell_c).max(0.0).powi(n_r as i32),
        0.0,
        l / ell_c,
        1e-12,
        20_000,
    );
    q.value *= m_th_b;
    q.error *= m_th_b;
    Ok(q)
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() || grid.windows(2).any(|w| !(w[0] < w[1])) || !(grid[0] > 0.0) {
        return Err(Error::BadGrid);
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThurstonEstimate {
    #[serde(rename = "L")]
    pub l: f64,
    /// Integral multi-curves without peripheral components, `l_P <= L`.
    pub b: u64,
    /// All integral multi-curves, `l_P <= L`.
    pub b_all: u64,
    /// `b / L^N`.
    pub estimate: f64,
    /// `b_all * prod l_j / (estimate * L^(N+n) * I(N, n))`.
    pub ratio: f64,
}

/// Lattice-point estimates of the Thurston measure of the `l_P` unit ball.
pub fn thurston_ball_estimate(arcs: &ArcSystem, grid: &[f64]) -> Result<Vec<ThurstonEstimate>> {
    check_grid(grid)?;
    let spine = arcs.spine();
    let cx = spine.sig().complexity()?;
    let n = spine.sig().n_boundary;
    let ell: Vec<f64> = spine
        .boundary_words()
        .iter()
        .map(|w| arcs.ell_p(&arcs.word_counts(w)))
        .collect();
    let prod: f64 = ell.iter().product();
    let simplex = simplex_integral(cx.n, n)?.exact_f64();
    let top = *grid.last().expect("nonempty");
    let mut b = vec![0u64; grid.len()];
    let mut b_all = vec![0u64; grid.len()];
    arcs.enumerate(top, None, |_, lp, internal| {
        let first = grid.partition_point(|&l| l < lp - 1e-9);
        for j in first..grid.len() {
            b_all[j] += 1;
            if internal {
                b[j] += 1;
            }
        }
        true
    })?;
    Ok(grid
        .iter()
        .enumerate()
        .map(|(j, &l)| {
            let estimate = b[j] as f64 / l.powi(cx.n as i32);
            ThurstonEstimate {
                l,
                b: b[j],
                b_all: b_all[j],
                estimate,
                ratio: b_all[j] as f64 * prod / (estimate * l.powi((cx.n + n) as i32) * simplex),
            }
        })
        .collect())
}

/// `log2(b(L_k) / b(L_{k-1}))` for the top two grid points.
pub fn top_scaling_exponent(table: &[ThurstonEstimate]) -> Option<f64> {
    let [.., x, y] = table else { return None };
    if x.b == 0 {
        return None;
    }
    Some((y.b as f64 / x.b as f64).ln() / (y.l / x.l).ln())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnitBallRow {
    pub boundary_length: f64,
    pub systole: f64,
    pub estimate: f64,
    /// `estimate * boundary_length^N`.
    pub scaled: f64,
}

/// Thurston-measure estimates at radius `l` over one-holed tori with the
/// given boundary lengths, each checked to have systole at least `s`.
pub fn unit_ball_bounds_experiment(boundary_lengths: &[f64], s: f64, l: f64) -> Result<Vec<UnitBallRow>> {
    if boundary_lengths.is_empty() {
        return Err(Error::Empty("boundary lengths"));
    }
    check_positive("L", l)?;
    let spine = RibbonSpine::standard(SurfaceSig::new(1, 1)?)?;
    let big_n = spine.sig().complexity()?.n;
    boundary_lengths
        .iter()
        .map(|&bl| {
            let h = HyperbolicStructure::from_fenchel_nielsen(&spine, &symmetric_torus_spec(bl))?;
            let systole = h.check_systole(s, 4)?;
            let arcs = ArcSystem::from_structure(&h)?;
            let est = thurston_ball_estimate(&arcs, &[l])?[0].estimate;
            Ok(UnitBallRow {
                boundary_length: bl,
                systole,
                estimate: est,
                scaled: est * bl.powi(big_n as i32),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitCountRow {
    #[serde(rename = "L")]
    pub l: f64,
    pub count: usize,
    /// `count / L^N`.
    pub normalized: f64,
    pub slack: f64,
    pub stable: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitCountTable {
    #[serde(rename = "N")]
    pub big_n: u32,
    pub rows: Vec<OrbitCountRow>,
    /// Log-log slope between the top two grid points.
    pub top_slope: Option<f64>,
    /// Least-squares log-log slope over all grid points and its standard
    /// error.
    pub fit_slope: Option<f64>,
    pub fit_std_error: Option<f64>,
    pub all_stable: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrbitSearchParams {
    pub slack: f64,
    pub max_slack: f64,
    pub budget: usize,
}

impl Default for OrbitSearchParams {
    fn default() -> Self {
        OrbitSearchParams {
            slack: 1.5,
            max_slack: 4.0,
            budget: 2_000_000,
        }
    }
}

/// Counts of the orbit of `c` in hyperbolic-length balls over the grid.
pub fn orbit_counting_experiment(
    h: &HyperbolicStructure,
    gens: &[MappingClass],
    c: &RationalCurrent,
    grid: &[f64],
    params: OrbitSearchParams,
) -> Result<OrbitCountTable> {
    check_grid(grid)?;
    if c.is_zero() {
        return Err(Error::ZeroCurrent);
    }
    let big_n = h.spine().sig().complexity()?.n;
    let mut rows = Vec::with_capacity(grid.len());
    for &l in grid {
        let ball = orbit_ball(h, gens, c, l, params.slack, params.max_slack, params.budget)?;
        let count = ball.elements.len();
        rows.push(OrbitCountRow {
            l,
            count,
            normalized: count as f64 / l.powi(big_n as i32),
            slack: ball.slack,
            stable: ball.stable,
        });
    }
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.count > 0)
        .map(|r| (r.l.ln(), (r.count as f64).ln()))
        .collect();
    let top_slope = match rows.as_slice() {
        [.., x, y] if x.count > 0 && y.count > 0 => Some(((y.count as f64) / (x.count as f64)).ln() / (y.l / x.l).ln()),
        _ => None,
    };
    let (fit_slope, fit_std_error) = least_squares_slope(&pts);
    Ok(OrbitCountTable {
        big_n,
        all_stable: rows.iter().all(|r| r.stable),
        rows,
        top_slope,
        fit_slope,
        fit_std_error,
    })
}

fn least_squares_slope(pts: &[(f64, f64)]) -> (Option<f64>, Option<f64>) {
    let k = pts.len() as f64;
    if pts.len() < 2 {
        return (None, None);
    }
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return (None, None);
    }
    let slope = sxy / sxx;
    if pts.len() < 3 {
        return (Some(slope), None);
    }
    let rss: f64 = pts.iter().map(|p| (p.1 - my - slope * (p.0 - mx)).powi(2)).sum();
    (Some(slope), Some((rss / (k - 2.0) / sxx).sqrt()))
}
