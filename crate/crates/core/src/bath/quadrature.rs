//! Globally adaptive Gauss–Kronrod (10/21) quadrature on a finite interval.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Outcome of one integral evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// Estimated absolute error, always non-negative.
    pub abs_error: f64,
    /// `abs_error` fell below the requested tolerance within budget.
    pub converged: bool,
    /// Integrand evaluations spent.
    pub evaluations: usize,
}

impl QuadratureResult {
    pub const ZERO: Self = Self { value: 0.0, abs_error: 0.0, converged: true, evaluations: 0 };

    /// Multiplies value and error estimate by `s`.
    pub fn scaled(self, s: f64) -> Self {
        Self { value: self.value * s, abs_error: self.abs_error * s.abs(), ..self }
    }
}

/// Settings for [`integrate`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Adaptive {
    /// Absolute error target.
    pub tol: f64,
    /// Maximum number of integrand evaluations.
    pub budget: usize,
    /// Initial panels are no wider than this.
    pub max_panel_width: f64,
}

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const GK_POINTS: usize = 21;

/// One 21-point Kronrod panel with the QUADPACK error heuristic.
fn gk21(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);

    let mut gauss = 0.0;
    let mut kronrod = f_center * WGK[10];
    let mut res_abs = kronrod.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];

    for j in 0..10 {
        let x = half * XGK[j];
        let (lo, hi) = (f(center - x), f(center + x));
        fv1[j] = lo;
        fv2[j] = hi;
        kronrod += WGK[j] * (lo + hi);
        res_abs += WGK[j] * (lo.abs() + hi.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (lo + hi);
        }
    }

    let mean = 0.5 * kronrod;
    let mut res_asc = WGK[10] * (f_center - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let width = half.abs();
    let value = kronrod * half;
    let res_abs = res_abs * width;
    let res_asc = res_asc * width;
    let mut err = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    (value, err)
}

#[derive(Clone, Copy, Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

#[derive(PartialEq)]
struct Worst {
    err: f64,
    index: usize,
}

impl Eq for Worst {}

impl Ord for Worst {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err).then_with(|| other.index.cmp(&self.index))
    }
}

impl PartialOrd for Worst {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Integrates `f` over `[a, b]`.
///
/// The interval is first cut into equal panels no wider than
/// `opts.max_panel_width`; the panel with the largest error estimate is then
/// bisected until the summed estimate drops below `opts.tol` or the
/// evaluation budget runs out.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, opts: &Adaptive) -> QuadratureResult {
    if a == b {
        return QuadratureResult::ZERO;
    }
    let width = b - a;
    let n0 = if opts.max_panel_width.is_finite() && opts.max_panel_width > 0.0 {
        (width.abs() / opts.max_panel_width).ceil().max(1.0) as usize
    } else {
        1
    };

    let mut panels = Vec::with_capacity(n0 + 64);
    let mut heap = BinaryHeap::with_capacity(n0 + 64);
    let mut evaluations = 0;
    let mut total_err = 0.0;
    for i in 0..n0 {
        let lo = a + width * (i as f64) / (n0 as f64);
        let hi = if i + 1 == n0 { b } else { a + width * ((i + 1) as f64) / (n0 as f64) };
        let (value, err) = gk21(&f, lo, hi);
        evaluations += GK_POINTS;
        total_err += err;
        heap.push(Worst { err, index: panels.len() });
        panels.push(Panel { a: lo, b: hi, value, err });
    }

    while total_err > opts.tol && evaluations + 2 * GK_POINTS <= opts.budget {
        let Some(Worst { index, .. }) = heap.pop() else { break };
        let p = panels[index];
        let mid = 0.5 * (p.a + p.b);
        if !(mid > p.a.min(p.b) && mid < p.a.max(p.b)) {
            // Panel is at floating-point resolution; keep its error.
            continue;
        }
        let (v1, e1) = gk21(&f, p.a, mid);
        let (v2, e2) = gk21(&f, mid, p.b);
        evaluations += 2 * GK_POINTS;
        total_err += e1 + e2 - p.err;
        panels[index] = Panel { a: p.a, b: mid, value: v1, err: e1 };
        heap.push(Worst { err: e1, index });
        heap.push(Worst { err: e2, index: panels.len() });
        panels.push(Panel { a: mid, b: p.b, value: v2, err: e2 });
    }

    let value = panels.iter().map(|p| p.value).sum();
    let abs_error: f64 = panels.iter().map(|p| p.err).sum();
    QuadratureResult {
        value,
        abs_error,
        converged: abs_error <= opts.tol && value.is_finite(),
        evaluations,
    }
}
