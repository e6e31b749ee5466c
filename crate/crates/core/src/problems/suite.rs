//! Twenty-four scalable test functions in five difficulty groups.
//!
//! Each function is instantiated from `(id, D, instance)` through a seeded
//! transform: an optimum location, up to two random rotations and an
//! objective offset. Separable functions (1-5) are never rotated.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::transforms::{f_pen, lambda_diag, scale_in_place, t_asy, t_osz, t_osz_scalar, Rotation};
use crate::error::{Error, Result};
use crate::problem::{Bounds, Problem};
use crate::rng::{mix_seed, RngStream};

pub const SUITE_SIZE: u32 = 24;
pub const DOMAIN: (f64, f64) = (-5.0, 5.0);
const INSTANCE_SEED_BASE: u64 = 0x0b0b_5eed_2400_0001;
/// Minimum of `-z sin(sqrt|z|)` scaled by 1/100.
const SCHWEFEL_CONST: f64 = 4.189_828_872_724_339;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionGroup {
    Separable,
    LowConditioning,
    HighConditioning,
    MultimodalStructured,
    MultimodalWeak,
}

impl FunctionGroup {
    pub const ALL: [FunctionGroup; 5] = [
        FunctionGroup::Separable,
        FunctionGroup::LowConditioning,
        FunctionGroup::HighConditioning,
        FunctionGroup::MultimodalStructured,
        FunctionGroup::MultimodalWeak,
    ];

    pub fn of(fn_id: u32) -> Option<Self> {
        Some(match fn_id {
            1..=5 => Self::Separable,
            6..=9 => Self::LowConditioning,
            10..=14 => Self::HighConditioning,
            15..=19 => Self::MultimodalStructured,
            20..=24 => Self::MultimodalWeak,
            _ => return None,
        })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::Separable => "separable",
            Self::LowConditioning => "low_conditioning",
            Self::HighConditioning => "high_conditioning",
            Self::MultimodalStructured => "multimodal_structured",
            Self::MultimodalWeak => "multimodal_weak",
        }
    }
}

impl fmt::Display for FunctionGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Identifier of a suite function, always in `1..=24`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SuiteFunction(u32);

impl SuiteFunction {
    pub fn new(id: u32) -> Result<Self> {
        if (1..=SUITE_SIZE).contains(&id) {
            Ok(Self(id))
        } else {
            Err(Error::InvalidProblem(format!("suite function id {id} outside 1..=24")))
        }
    }

    pub fn all() -> impl Iterator<Item = SuiteFunction> {
        (1..=SUITE_SIZE).map(SuiteFunction)
    }

    pub fn id(&self) -> u32 {
        self.0
    }

    pub fn group(&self) -> FunctionGroup {
        FunctionGroup::of(self.0).expect("validated id")
    }

    pub fn base_name(&self) -> &'static str {
        match self.0 {
            1 => "sphere",
            2 => "separable_ellipsoid",
            3 => "separable_rastrigin",
            4 => "skew_rastrigin",
            5 => "linear_slope",
            6 => "attractive_sector",
            7 => "step_ellipsoid",
            8 => "rotated_rosenbrock",
            9 => "rotated_quadratic",
            10 => "rotated_ellipsoid",
            11 => "discus",
            12 => "bent_cigar",
            13 => "sharp_ridge",
            14 => "different_powers",
            15 => "rotated_rastrigin",
            16 => "weierstrass",
            17 => "schaffer_f7",
            18 => "schaffer_f7_ill",
            19 => "griewank_rosenbrock",
            20 => "schwefel",
            21 => "gallagher_101",
            22 => "gallagher_21",
            23 => "katsuura",
            24 => "lunacek_bi_rastrigin",
            _ => unreachable!(),
        }
    }

    /// Functions with a single basin; their optimum sits exactly at the shift.
    pub fn is_unimodal(&self) -> bool {
        matches!(self.0, 1 | 2 | 5..=14)
    }
}

/// Seeded instance data: optimum location, rotations and offset.
#[derive(Debug, Clone)]
pub struct InstanceTransform {
    pub shift: Vec<f64>,
    pub rotation: Rotation,
    /// Second rotation used by functions that mix twice.
    pub mixing: Rotation,
    pub f_offset: f64,
}

#[derive(Debug, Clone)]
struct Peaks {
    /// Peak centres mapped through the rotation.
    centres: Vec<Vec<f64>>,
    /// Per-peak diagonal of the (permuted) conditioning matrix, pre-divided by `α^{1/4}`.
    scales: Vec<Vec<f64>>,
    weights: Vec<f64>,
}

/// A fully instantiated suite function.
#[derive(Debug, Clone)]
pub struct SuiteInstance {
    function: SuiteFunction,
    dim: usize,
    instance_id: u32,
    transform: InstanceTransform,
    peaks: Option<Peaks>,
}

impl SuiteInstance {
    pub fn new(fn_id: u32, dim: usize, instance_id: u32) -> Result<Self> {
        let function = SuiteFunction::new(fn_id)?;
        if dim < 2 {
            return Err(Error::InvalidProblem(format!("dimension {dim} below 2")));
        }
        let mut rng = RngStream::new(mix_seed(
            INSTANCE_SEED_BASE,
            &[fn_id as u64, dim as u64, instance_id as u64],
        ));

        let signs: Vec<f64> = (0..dim).map(|_| if rng.uniform() < 0.5 { -1.0 } else { 1.0 }).collect();
        let uniform_shift =
            |rng: &mut RngStream, r: f64| -> Vec<f64> { (0..dim).map(|_| rng.uniform_in(-r, r)).collect() };
        let shift = match fn_id {
            5 => signs.iter().map(|s| 4.0 * s).collect(),
            8 | 9 | 19 => uniform_shift(&mut rng, 3.0),
            20 => signs.iter().map(|s| 0.5 * 4.209_687_463_3 * s).collect(),
            22 => uniform_shift(&mut rng, 3.92),
            24 => signs.iter().map(|s| 1.25 * s).collect(),
            _ => uniform_shift(&mut rng, 4.0),
        };
        let (rotation, mixing) = if function.group() == FunctionGroup::Separable {
            (Rotation::identity(dim), Rotation::identity(dim))
        } else {
            let r = Rotation::random(dim, &mut rng);
            let q = Rotation::random(dim, &mut rng);
            (r, q)
        };
        let f_offset = (rng.uniform_in(-100.0, 100.0) * 100.0).round() / 100.0;

        let peaks = match fn_id {
            21 => Some(make_peaks(&mut rng, &shift, &rotation, 101, 5.0, 1000.0)),
            22 => Some(make_peaks(&mut rng, &shift, &rotation, 21, 4.9, 1.0e6)),
            _ => None,
        };

        Ok(Self {
            function,
            dim,
            instance_id,
            transform: InstanceTransform {
                shift,
                rotation,
                mixing,
                f_offset,
            },
            peaks,
        })
    }

    pub fn function(&self) -> SuiteFunction {
        self.function
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn instance_id(&self) -> u32 {
        self.instance_id
    }

    pub fn transform(&self) -> &InstanceTransform {
        &self.transform
    }

    /// Location of the global optimum.
    pub fn optimum_point(&self) -> &[f64] {
        &self.transform.shift
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        self.base_value(x) + self.transform.f_offset
    }

    /// `R (x - shift)`
    fn rotated_delta(&self, x: &[f64]) -> Vec<f64> {
        let delta: Vec<f64> = x.iter().zip(&self.transform.shift).map(|(a, b)| a - b).collect();
        self.transform.rotation.apply_vec(&delta)
    }

    fn base_value(&self, x: &[f64]) -> f64 {
        let d = self.dim;
        let df = d as f64;
        let denom = (d - 1) as f64;
        let shift = &self.transform.shift;
        let rot = &self.transform.rotation;
        let mix = &self.transform.mixing;
        let delta = || -> Vec<f64> { x.iter().zip(shift).map(|(a, b)| a - b).collect() };
        let power = |i: usize, e: f64| 10f64.powf(e * i as f64 / denom);

        match self.function.id() {
            1 => delta().iter().map(|z| z * z).sum(),
            2 => {
                let mut z = delta();
                t_osz(&mut z);
                z.iter().enumerate().map(|(i, v)| power(i, 6.0) * v * v).sum()
            }
            3 => {
                let mut z = delta();
                t_osz(&mut z);
                t_asy(&mut z, 0.2);
                scale_in_place(&mut z, &lambda_diag(10.0, d));
                rastrigin(&z)
            }
            4 => {
                let mut z = delta();
                t_osz(&mut z);
                for (i, v) in z.iter_mut().enumerate() {
                    let mut s = 10f64.powf(0.5 * i as f64 / denom);
                    if *v > 0.0 && i % 2 == 0 {
                        s *= 10.0;
                    }
                    *v *= s;
                }
                rastrigin(&z) + 100.0 * f_pen(x)
            }
            5 => x
                .iter()
                .zip(shift)
                .enumerate()
                .map(|(i, (xi, opt))| {
                    let s = opt.signum() * power(i, 1.0);
                    let z = if xi * opt < opt * opt { *xi } else { *opt };
                    s * (opt - z)
                })
                .sum(),
            6 => {
                let mut z = self.rotated_delta(x);
                scale_in_place(&mut z, &lambda_diag(10.0, d));
                let z = mix.apply_vec(&z);
                let s: f64 = z
                    .iter()
                    .zip(shift)
                    .map(|(zi, oi)| {
                        let w = if zi * oi > 0.0 { 100.0 } else { 1.0 };
                        (w * zi).powi(2)
                    })
                    .sum();
                t_osz_scalar(s).powf(0.9)
            }
            7 => {
                let mut zh = self.rotated_delta(x);
                scale_in_place(&mut zh, &lambda_diag(10.0, d));
                let zt: Vec<f64> = zh
                    .iter()
                    .map(|v| {
                        if v.abs() > 0.5 {
                            (0.5 + v).floor()
                        } else {
                            (0.5 + 10.0 * v).floor() / 10.0
                        }
                    })
                    .collect();
                let z = mix.apply_vec(&zt);
                let s: f64 = z.iter().enumerate().map(|(i, v)| power(i, 2.0) * v * v).sum();
                0.1 * (zh[0].abs() / 1e4).max(s) + f_pen(x)
            }
            8 => {
                let c = (df.sqrt() / 8.0).max(1.0);
                let z: Vec<f64> = self.rotated_delta(x).iter().map(|v| c * v + 1.0).collect();
                rosenbrock(&z)
            }
            9 => {
                let z = self.rotated_delta(x);
                z.iter().enumerate().map(|(i, v)| power(i, 3.0) * v * v).sum()
            }
            10 => {
                let mut z = self.rotated_delta(x);
                t_osz(&mut z);
                z.iter().enumerate().map(|(i, v)| power(i, 6.0) * v * v).sum()
            }
            11 => {
                let mut z = self.rotated_delta(x);
                t_osz(&mut z);
                1e6 * z[0] * z[0] + z[1..].iter().map(|v| v * v).sum::<f64>()
            }
            12 => {
                let mut z = self.rotated_delta(x);
                t_asy(&mut z, 0.5);
                let z = rot.apply_vec(&z);
                z[0] * z[0] + 1e6 * z[1..].iter().map(|v| v * v).sum::<f64>()
            }
            13 => {
                let mut z = self.rotated_delta(x);
                scale_in_place(&mut z, &lambda_diag(10.0, d));
                let z = mix.apply_vec(&z);
                z[0] * z[0] + 100.0 * z[1..].iter().map(|v| v * v).sum::<f64>().sqrt()
            }
            14 => {
                let z = self.rotated_delta(x);
                z.iter()
                    .enumerate()
                    .map(|(i, v)| v.abs().powf(2.0 + 4.0 * i as f64 / denom))
                    .sum::<f64>()
                    .sqrt()
            }
            15 => {
                let mut z = self.rotated_delta(x);
                t_osz(&mut z);
                t_asy(&mut z, 0.2);
                let mut z = mix.apply_vec(&z);
                scale_in_place(&mut z, &lambda_diag(10.0, d));
                rastrigin(&rot.apply_vec(&z))
            }
            16 => {
                let mut z = self.rotated_delta(x);
                t_osz(&mut z);
                let mut z = mix.apply_vec(&z);
                scale_in_place(&mut z, &lambda_diag(0.01, d));
                let z = rot.apply_vec(&z);
                let f0: f64 = -(0..12).map(|k| 0.5f64.powi(k)).sum::<f64>();
                let s: f64 = z
                    .iter()
                    .map(|zi| {
                        (0..12)
                            .map(|k| 0.5f64.powi(k) * (2.0 * PI * 3f64.powi(k) * (zi + 0.5)).cos())
                            .sum::<f64>()
                    })
                    .sum();
                10.0 * (s / df - f0).max(0.0).powi(3) + 10.0 / df * f_pen(x)
            }
            17 | 18 => {
                let cond = if self.function.id() == 17 { 10.0 } else { 1000.0 };
                let mut z = self.rotated_delta(x);
                t_asy(&mut z, 0.5);
                let mut z = mix.apply_vec(&z);
                scale_in_place(&mut z, &lambda_diag(cond, d));
                let s: f64 = z
                    .windows(2)
                    .map(|w| {
                        let si = (w[0] * w[0] + w[1] * w[1]).sqrt();
                        si.sqrt() * (1.0 + (50.0 * si.powf(0.2)).sin().powi(2))
                    })
                    .sum();
                (s / denom).powi(2) + 10.0 * f_pen(x)
            }
            19 => {
                let c = (df.sqrt() / 8.0).max(1.0);
                let z: Vec<f64> = self.rotated_delta(x).iter().map(|v| c * v + 1.0).collect();
                let s: f64 = z
                    .windows(2)
                    .map(|w| {
                        let si = 100.0 * (w[0] * w[0] - w[1]).powi(2) + (w[0] - 1.0).powi(2);
                        si / 4000.0 - si.cos()
                    })
                    .sum();
                10.0 * s / denom + 10.0
            }
            20 => {
                let xh: Vec<f64> = x.iter().zip(shift).map(|(xi, oi)| 2.0 * oi.signum() * xi).collect();
                let two_opt: Vec<f64> = shift.iter().map(|o| 2.0 * o.abs()).collect();
                let mut zh = xh.clone();
                for i in 1..d {
                    zh[i] = xh[i] + 0.25 * (xh[i - 1] - two_opt[i - 1]);
                }
                let lam = lambda_diag(10.0, d);
                let z: Vec<f64> = (0..d)
                    .map(|i| 100.0 * (lam[i] * (zh[i] - two_opt[i]) + two_opt[i]))
                    .collect();
                let s: f64 = z.iter().map(|zi| zi * zi.abs().sqrt().sin()).sum();
                let zs: Vec<f64> = z.iter().map(|v| v / 100.0).collect();
                -s / (100.0 * df) + SCHWEFEL_CONST + 100.0 * f_pen(&zs)
            }
            21 | 22 => {
                let peaks = self.peaks.as_ref().expect("peak data");
                let u = rot.apply_vec(x);
                let best = peaks
                    .centres
                    .iter()
                    .zip(&peaks.scales)
                    .zip(&peaks.weights)
                    .map(|((c, s), w)| {
                        let q: f64 = u
                            .iter()
                            .zip(c)
                            .zip(s)
                            .map(|((ui, ci), si)| si * (ui - ci).powi(2))
                            .sum();
                        w * (-q / (2.0 * df)).exp()
                    })
                    .fold(f64::NEG_INFINITY, f64::max);
                t_osz_scalar(10.0 - best).powi(2) + f_pen(x)
            }
            23 => {
                let mut z = self.rotated_delta(x);
                scale_in_place(&mut z, &lambda_diag(100.0, d));
                let z = mix.apply_vec(&z);
                let expo = 10.0 / df.powf(1.2);
                let prod: f64 = z
                    .iter()
                    .enumerate()
                    .map(|(i, zi)| {
                        let s: f64 = (1..=32)
                            .map(|j| {
                                let p = 2f64.powi(j);
                                (p * zi - (p * zi).round()).abs() / p
                            })
                            .sum();
                        (1.0 + (i + 1) as f64 * s).powf(expo)
                    })
                    .product();
                10.0 / (df * df) * prod - 10.0 / (df * df) + f_pen(x)
            }
            24 => {
                let mu0 = 2.5;
                let dd = 1.0;
                let sl = 1.0 - 1.0 / (2.0 * (df + 20.0).sqrt() - 8.2);
                let mu1 = -((mu0 * mu0 - dd) / sl).sqrt();
                let xh: Vec<f64> = x.iter().zip(shift).map(|(xi, oi)| 2.0 * oi.signum() * xi).collect();
                let a: f64 = xh.iter().map(|v| (v - mu0).powi(2)).sum();
                let b: f64 = dd * df + sl * xh.iter().map(|v| (v - mu1).powi(2)).sum::<f64>();
                let centred: Vec<f64> = xh.iter().map(|v| v - mu0).collect();
                let mut z = rot.apply_vec(&centred);
                scale_in_place(&mut z, &lambda_diag(100.0, d));
                let z = mix.apply_vec(&z);
                let osc: f64 = z.iter().map(|zi| (2.0 * PI * zi).cos()).sum();
                a.min(b) + 10.0 * (df - osc) + 1e4 * f_pen(x)
            }
            _ => unreachable!(),
        }
    }
}

fn rastrigin(z: &[f64]) -> f64 {
    let d = z.len() as f64;
    10.0 * (d - z.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>()) + z.iter().map(|v| v * v).sum::<f64>()
}

fn rosenbrock(z: &[f64]) -> f64 {
    z.windows(2)
        .map(|w| 100.0 * (w[0] * w[0] - w[1]).powi(2) + (w[0] - 1.0).powi(2))
        .sum()
}

fn make_peaks(
    rng: &mut RngStream,
    optimum: &[f64],
    rotation: &Rotation,
    count: usize,
    spread: f64,
    alpha_opt: f64,
) -> Peaks {
    let d = optimum.len();
    let mut centres = vec![rotation.apply_vec(optimum)];
    for _ in 1..count {
        let y: Vec<f64> = (0..d).map(|_| rng.uniform_in(-spread, spread)).collect();
        centres.push(rotation.apply_vec(&y));
    }
    let mut alphas: Vec<f64> = (0..count - 1)
        .map(|j| 1000f64.powf(2.0 * j as f64 / (count - 2) as f64))
        .collect();
    rng.shuffle(&mut alphas);
    alphas.insert(0, alpha_opt);

    let scales = alphas
        .iter()
        .map(|&a| {
            let mut diag = lambda_diag(a, d);
            rng.shuffle(&mut diag);
            // lambda_diag holds α^{i/(2(D-1))}; the quadratic form wants its square
            diag.iter().map(|v| v * v / a.powf(0.25)).collect()
        })
        .collect();
    let mut weights = vec![10.0];
    weights.extend((1..count).map(|i| 1.1 + 8.0 * (i - 1) as f64 / (count - 2) as f64));
    Peaks {
        centres,
        scales,
        weights,
    }
}

/// Builds the [`Problem`] for suite function `fn_id` at dimension `dim`.
pub fn make_instance(fn_id: u32, dim: usize, instance_id: u32) -> Result<Problem> {
    let inst = SuiteInstance::new(fn_id, dim, instance_id)?;
    let name = format!("f{fn_id}");
    let optimum = inst.transform.f_offset;
    let bounds = Bounds::uniform(dim, DOMAIN.0, DOMAIN.1)?;
    Ok(Problem::new(name, bounds, move |x: &[f64]| inst.value(x))
        .with_optimum(optimum)
        .with_instance(instance_id))
}
