//! Numerical acceptance checks, grouped into suites.

use std::f64::consts::{PI, TAU};
use std::time::Instant;

use clap::ValueEnum;
use colloids_asymptotics::{
    neck_o1, nonconstant_pair_energy, self_energy_blown_up, self_energy_mode, two_particle_o1,
};
use colloids_fieldsolver::{
    radial_nonlinear_profile, solve_collocation, solve_fd, solve_nonlinear, solve_nonlinear_with, tail_decay_rate,
    BulkPotential, FieldSample, NonlinearOptions, Ray,
};
use colloids_model::{BoundaryData, Complex64, Particle, ParticleConfiguration, PotentialParameters};
use colloids_montecarlo::{anneal, mean_relative_cos, neighbor_stats, AnnealState, Protocol, Schedule};
use colloids_specfun::{bessel_k_scaled, interaction_coefficient, polylog_half, split_coefficient, theta_k};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Specfun,
    Asymptotics,
    Solver,
    Montecarlo,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Specfun => "specfun",
            Suite::Asymptotics => "asymptotics",
            Suite::Solver => "solver",
            Suite::Montecarlo => "montecarlo",
            Suite::All => "all",
        }
    }

    /// Criterion numbers run by this suite.
    pub fn criteria(self) -> Vec<u32> {
        match self {
            Suite::Specfun => vec![9],
            Suite::Asymptotics => vec![2],
            Suite::Solver => vec![1, 3, 4, 5, 6, 7, 8, 11],
            Suite::Montecarlo => vec![10],
            Suite::All => (1..=11).collect(),
        }
    }
}

/// One measured quantity against its requirement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub required: String,
    pub passed: bool,
}

impl Check {
    pub fn at_most(name: impl Into<String>, measured: f64, limit: f64) -> Self {
        Self { name: name.into(), measured, required: format!("<= {limit}"), passed: measured <= limit }
    }

    pub fn at_least(name: impl Into<String>, measured: f64, limit: f64) -> Self {
        Self { name: name.into(), measured, required: format!(">= {limit}"), passed: measured >= limit }
    }

    pub fn above(name: impl Into<String>, measured: f64, limit: f64) -> Self {
        Self { name: name.into(), measured, required: format!("> {limit}"), passed: measured > limit }
    }

    pub fn within(name: impl Into<String>, measured: f64, lo: f64, hi: f64) -> Self {
        Self { name: name.into(), measured, required: format!("in [{lo}, {hi}]"), passed: (lo..=hi).contains(&measured) }
    }

    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Self { name: name.into(), measured: if ok { 1.0 } else { 0.0 }, required: "1".into(), passed: ok }
    }

    /// Reported value with no requirement attached.
    pub fn info(name: impl Into<String>, measured: f64) -> Self {
        Self { name: name.into(), measured, required: "info".into(), passed: true }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Criterion {
    pub id: u32,
    pub title: &'static str,
    pub checks: Vec<Check>,
}

impl Criterion {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    /// Checks that carry a requirement.
    pub fn headline(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.required != "info").collect()
    }
}

fn collect(id: u32, title: &'static str, body: impl FnOnce(&mut Vec<Check>) -> Result<()>) -> Criterion {
    let mut checks = Vec::new();
    if let Err(e) = body(&mut checks) {
        checks.push(Check { name: "error".into(), measured: f64::NAN, required: e.to_string(), passed: false });
    }
    Criterion { id, title, checks }
}

pub fn run_criterion(id: u32) -> Criterion {
    match id {
        1 => single_mode_energy(),
        2 => self_energy_constant(),
        3 => interaction_slope(),
        4 => o1_separation(),
        5 => pair_factor(),
        6 => three_particles(),
        7 => nonlinear_profile(),
        8 => nonlinear_offset(),
        9 => special_function_identities(),
        10 => monte_carlo_gates(),
        11 => oracle_equivalence(),
        _ => Criterion { id, title: "unknown criterion", checks: Vec::new() },
    }
}

pub fn run_suite(suite: Suite) -> Vec<Criterion> {
    suite.criteria().into_iter().map(run_criterion).collect()
}

/// CSV report: one row per check.
pub fn report_csv(suite: Suite, criteria: &[Criterion]) -> String {
    let mut out = String::from("suite,criterion,check,measured,required,status\n");
    for c in criteria {
        for check in &c.checks {
            let status = if check.passed { "PASS" } else { "FAIL" };
            let required = check.required.replace(',', ";");
            out += &format!("{},{},{},{},{required},{status}\n", suite.name(), c.id, check.name, check.measured);
        }
    }
    out
}

fn single(eps: f64, data: BoundaryData) -> Result<ParticleConfiguration> {
    Ok(ParticleConfiguration::new(vec![Particle::unit([0.0, 0.0], eps, data)], eps)?)
}

/// Two unit disks on the x axis at blown-up gap 2b; the second lies in direction α = 0.
fn pair(eps: f64, b: f64, g1: BoundaryData, g2: BoundaryData) -> Result<ParticleConfiguration> {
    let c = 1.0 / (eps * eps) + b;
    Ok(ParticleConfiguration::new(vec![Particle::unit([-c, 0.0], eps, g1), Particle::unit([c, 0.0], eps, g2)], eps)?)
}

fn constant(g: f64) -> BoundaryData {
    BoundaryData::constant(g)
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

fn single_mode_energy() -> Criterion {
    collect(1, "single-particle mode energy", |checks| {
        for eps in [1.0, 0.5, 0.3] {
            for m in 0..=2 {
                let start = Instant::now();
                let sol = solve_collocation(&single(eps, BoundaryData::canonical(m, 0.0))?, 8, 64)?;
                let secs = start.elapsed().as_secs_f64();
                let exact = self_energy_mode(m, 1.0, eps)?;
                checks.push(Check::at_most(format!("eps={eps} m={m} relative error"), (sol.energy / exact - 1.0).abs(), 1e-8));
                checks.push(Check::at_most(format!("eps={eps} m={m} runtime s"), secs, 1.0));
            }
        }
        Ok(())
    })
}

fn self_energy_constant() -> Criterion {
    collect(2, "self-energy constant", |checks| {
        let eps: f64 = 0.1;
        let r = 1.0 / (eps * eps);
        let scale = TAU / (eps * eps);
        let value = scale * bessel_k_scaled(1, r)? / bessel_k_scaled(0, r)? - scale;
        checks.push(Check::at_most("|2pi/eps^2 K1/K0 - 2pi/eps^2 - pi| at eps=0.1", (value - PI).abs(), 0.01));
        Ok(())
    })
}

fn interaction_slope() -> Criterion {
    collect(3, "two-disk interaction slope", |checks| {
        let eps: f64 = 0.15;
        let r = 1.0 / (eps * eps);
        let self_energy = 2.0 * self_energy_blown_up(0, r)?;
        let bs = [2.0, 3.0, 4.0, 5.0];
        let start = Instant::now();
        let mut logs = Vec::new();
        let mut at_four = f64::NAN;
        for &b in &bs {
            let sol = solve_collocation(&pair(eps, b, constant(1.0), constant(1.0))?, 48, 200)?;
            let interaction = (sol.energy - self_energy).abs();
            if b == 4.0 {
                at_four = interaction;
            }
            logs.push(interaction.ln());
        }
        let secs = start.elapsed().as_secs_f64();
        checks.push(Check::within("slope of log|kappa - self| vs b", slope(&bs, &logs), -2.1, -1.9));
        let prefactor = at_four * (2.0 * 4.0f64).exp() / (4.0 * PI.sqrt() / eps);
        checks.push(Check::within("prefactor / (4 sqrt(pi)/eps) at b=4", prefactor, 0.9, 1.1));
        checks.push(Check::at_most("runtime s", secs, 30.0));
        Ok(())
    })
}

fn o1_separation() -> Criterion {
    collect(4, "O(1)-separation formula", |checks| {
        let eps = 0.15;
        let bs: Vec<f64> = (0..10).map(|k| 0.5 + 2.5 * k as f64 / 9.0).collect();
        let start = Instant::now();
        for (g1, g2) in [(1.0, 0.0), (1.0, 1.0), (1.0, -1.0)] {
            let mut worst: f64 = 0.0;
            let mut worst_literal: f64 = 0.0;
            for &b in &bs {
                let sol = solve_collocation(&pair(eps, b, constant(g1), constant(g2))?, 64, 300)?;
                let formula = two_particle_o1(g1, g2, b, eps, true)?;
                worst = worst.max((sol.energy - formula.total).abs());
                let literal = two_particle_o1(g1, g2, b, eps, false)?.total + PI;
                worst_literal = worst_literal.max((sol.energy - literal).abs());
            }
            checks.push(Check::at_most(format!("g=({g1};{g2}) max |kappa - kappa_bar|"), worst, 2.0));
            checks.push(Check::info(format!("g=({g1};{g2}) max |kappa - kappa_bar| with constant +pi"), worst_literal));
        }
        checks.push(Check::at_most("runtime s", start.elapsed().as_secs_f64(), 60.0));
        Ok(())
    })
}

fn pair_factor() -> Criterion {
    collect(5, "pair factor for canonical degree data", |checks| {
        let eps: f64 = 0.15;
        let r = 1.0 / (eps * eps);
        let b = 3.0;
        for d in 1..=3 {
            let self_energy = 2.0 * self_energy_blown_up(d, r)?;
            for (label, omega) in [("0", 0.0), ("pi/4", PI / 4.0), ("pi/2", PI / 2.0)] {
                let (g1, g2) = (BoundaryData::canonical(d, 0.0), BoundaryData::canonical(d, omega));
                let formula = nonconstant_pair_energy(&g1, &g2, b, 0.0, eps);
                let predicted = formula.neck_total();
                let name = format!("d={d} omega={label}");
                if predicted.abs() <= 10.0 * formula.remainder_bound {
                    checks.push(Check::info(format!("{name} formula below 10x remainder (skipped)"), predicted));
                    continue;
                }
                let sol = solve_collocation(&pair(eps, b, g1, g2)?, 64, 300)?;
                let ratio = (sol.energy - self_energy) / predicted;
                checks.push(Check::within(format!("{name} solver/formula"), ratio, 0.9, 1.1));
            }
        }
        Ok(())
    })
}

/// Three unit g ≡ 1 disks: the first at the origin, the others at gap 2b0
/// from it at polar angles ±φ/2.
fn opened_triangle(eps: f64, b0: f64, phi: f64) -> Result<ParticleConfiguration> {
    let d = 2.0 / (eps * eps) + 2.0 * b0;
    let (s, c) = (0.5 * phi).sin_cos();
    let one = constant(1.0);
    Ok(ParticleConfiguration::new(
        vec![
            Particle::unit([0.0, 0.0], eps, one.clone()),
            Particle::unit([d * c, d * s], eps, one.clone()),
            Particle::unit([d * c, -d * s], eps, one),
        ],
        eps,
    )?)
}

fn three_particles() -> Criterion {
    collect(6, "three-particle superposition", |checks| {
        let eps: f64 = 0.15;
        let r = 1.0 / (eps * eps);
        let (modes, points) = (48, 220);
        let single_self = self_energy_blown_up(0, r)?;
        let kappa0_literal = 1.5 * PI * (4.0 / (eps * eps) + 1.0);
        let mut worst: f64 = 0.0;
        let mut worst_literal: f64 = 0.0;
        for k in 0..=4 {
            let b = 1.0 + 0.5 * k as f64;
            let sol = solve_collocation(&opened_triangle(eps, b, PI / 3.0)?, modes, points)?;
            let neck = neck_o1(1.0, 1.0, b, eps)?;
            worst = worst.max((sol.energy - (3.0 * single_self + 3.0 * neck)).abs());
            worst_literal = worst_literal.max((sol.energy - (kappa0_literal + 3.0 * neck)).abs());
        }
        checks.push(Check::at_most("triangle max |kappa - (3 self + 3 kappa1)|", worst, 2.0));
        checks.push(Check::info("triangle max residual with kappa0 = (3pi/2)(4/eps^2+1)", worst_literal));

        // opening angle 180° − 2θ closes the third neck at θ = 60°
        let b0 = 1.0;
        let step = 5.0;
        let two = solve_collocation(&pair(eps, b0, constant(1.0), constant(1.0))?, modes, points)?;
        let one_neck = two.energy - 2.0 * single_self;
        let mut counts = Vec::new();
        for k in 0..=12 {
            let theta = step * k as f64;
            let phi = (180.0 - 2.0 * theta).to_radians();
            let sol = solve_collocation(&opened_triangle(eps, b0, phi)?, modes, points)?;
            let ratio = (sol.energy - 3.0 * single_self) / one_neck;
            checks.push(Check::info(format!("theta={theta} interaction / one neck"), ratio));
            counts.push((theta, ratio.round()));
        }
        let transition = counts.iter().find(|(_, n)| *n >= 3.0).map_or(f64::INFINITY, |(t, _)| *t);
        let ordered = counts.iter().all(|&(t, n)| if t < transition { n == 2.0 } else { n == 3.0 });
        checks.push(Check::within("two-to-three neck transition angle (deg)", transition, 60.0 - step, 60.0));
        checks.push(Check::holds("two necks below the transition and three from it on", ordered));
        Ok(())
    })
}

fn nonlinear_profile() -> Criterion {
    collect(7, "nonlinear radial profile and tail rate", |checks| {
        let eps: f64 = 0.4;
        let r = 1.0 / (eps * eps);
        let (h, padding) = (0.1, 10.0);
        let cfg = single(eps, constant(1.0))?;
        let nonlinear = solve_nonlinear(&cfg, h, padding, PotentialParameters::default())?;
        let mut worst: f64 = 0.0;
        for k in 1..=90 {
            let s = 0.1 * k as f64;
            let u = nonlinear.sample([r + s, 0.0]).unwrap_or(Complex64::new(f64::NAN, 0.0));
            worst = worst.max((u - radial_nonlinear_profile(s)).norm());
        }
        checks.push(Check::at_most("max |u - explicit profile| on the radial slice", worst, 1e-3));
        let linear_fd = solve_fd(&cfg, h, padding)?;
        let linear = solve_collocation(&cfg, 4, 32)?;
        let ray = Ray::new([0.0, 0.0], [1.0, 0.0]);
        let fields: [(&str, &dyn FieldSample); 3] =
            [("nonlinear", &nonlinear), ("linear fd", &linear_fd), ("linear collocation", &linear)];
        for (name, field) in fields {
            let rate = tail_decay_rate(field, ray, r + 2.0, r + 8.0, 40)?;
            checks.push(Check::at_most(format!("{name} |tail rate - 1|"), (rate - 1.0).abs(), 0.02));
        }
        Ok(())
    })
}

fn nonlinear_offset() -> Criterion {
    collect(8, "nonlinear-vs-linear offset", |checks| {
        let eps = 0.4;
        let (h, padding) = (0.1, 10.0);
        let mut offsets = Vec::new();
        for b in [1.0, 2.0, 3.0] {
            let cfg = pair(eps, b, constant(1.0), constant(1.0))?;
            let e = solve_nonlinear(&cfg, h, padding, PotentialParameters::default())?;
            let f = solve_nonlinear_with(&cfg, &NonlinearOptions::new(h, padding, BulkPotential::Quadratic))?;
            checks.push(Check::info(format!("b={b} E - F"), e.energy - f.energy));
            offsets.push(e.energy - f.energy);
        }
        let mean = offsets.iter().sum::<f64>() / offsets.len() as f64;
        let spread = offsets.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
            - offsets.iter().cloned().fold(f64::INFINITY, f64::min);
        checks.push(Check::at_most("spread / |mean| of E - F", spread / mean.abs(), 0.10));
        Ok(())
    })
}

/// T_n(0) and U_n(0) by the three-term recurrence at x = 0.
fn chebyshev_at_zero(n: usize) -> (Vec<i64>, Vec<i64>) {
    let mut t = vec![1, 0];
    let mut u = vec![1, 0];
    for k in 2..=n {
        t.push(-t[k - 2]);
        u.push(-u[k - 2]);
    }
    (t, u)
}

fn special_function_identities() -> Criterion {
    collect(9, "special-function identities", |checks| {
        let mut worst: f64 = 0.0;
        for i in 1..=50 {
            let x2 = 0.999 * (i as f64 / 50.0).powi(2);
            worst = worst.max((theta_k(2, x2.sqrt())? - polylog_half(x2)?).abs());
        }
        checks.push(Check::at_most("max |Theta_2(x) - Li_1/2(x^2)| on 50 points", worst, 1e-10));

        let x = 1e-3;
        for k in [3u32, 4] {
            let limit = (2.0 / k as f64).sqrt();
            let err = (theta_k(k, x)? / x.powi(k as i32) - limit).abs();
            checks.push(Check::at_most(format!("|Theta_{k}(x)/x^{k} - sqrt(2/{k})| at x=1e-3"), err, 1e-5));
        }

        let n = 40;
        let (t, u) = chebyshev_at_zero(n);
        let mut mismatches = 0;
        for m in 0..=n / 2 {
            for q in 0..=n / 2 {
                let um = if m == 0 { 0 } else { u[m - 1] };
                let uq = if q == 0 { 0 } else { u[q - 1] };
                let expected = 2 * (t[m] * t[q] - um * uq);
                let k = (m + q) as i64;
                if split_coefficient(m as u32, q as u32) != expected || interaction_coefficient(k) != expected {
                    mismatches += 1;
                }
            }
        }
        checks.push(Check::holds("c_k table exact for all splits m+n, m,n <= 20", mismatches == 0));

        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut worst: f64 = 0.0;
        for _ in 0..50 {
            let degree = rng.random_range(0..=12);
            let data = BoundaryData::from_modes(
                (-degree..=degree).map(|m| (m, Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))),
            );
            for k in 1..=13 {
                worst = worst.max((data.stride_sum(k) - data.grid_average(k)).norm());
            }
        }
        checks.push(Check::at_most("max |grid average - stride sum| over random degree <= 12", worst, 1e-12));
        Ok(())
    })
}

struct ChainResult {
    degree: i32,
    seed: u64,
    seconds: f64,
    min_distance: f64,
    max_coordinate: f64,
    nn_cos: [Option<f64>; 2],
    second_cos: Option<f64>,
}

fn run_chain(degree: i32, seed: u64) -> Result<ChainResult> {
    let start = Instant::now();
    let protocol = Protocol { degree, ..Protocol::default() };
    let traj = anneal(AnnealState::lattice(&protocol, seed)?, &Schedule::default(), 1000);
    let seconds = start.elapsed().as_secs_f64();
    let mut min_distance = f64::INFINITY;
    let mut max_coordinate: f64 = 0.0;
    for snap in &traj.snapshots {
        let p = &snap.positions;
        for i in 0..p.len() {
            max_coordinate = max_coordinate.max(p[i][0].abs()).max(p[i][1].abs());
            for j in (i + 1)..p.len() {
                min_distance = min_distance.min((p[i][0] - p[j][0]).hypot(p[i][1] - p[j][1]));
            }
        }
    }
    let state = &traj.final_state;
    let stats = neighbor_stats(state);
    Ok(ChainResult {
        degree,
        seed,
        seconds,
        min_distance,
        max_coordinate,
        nn_cos: [mean_relative_cos(state, &stats.nn_pairs, 1.0), mean_relative_cos(state, &stats.nn_pairs, 2.0)],
        second_cos: mean_relative_cos(state, &stats.second_nn_pairs, (degree - 1) as f64),
    })
}

fn monte_carlo_gates() -> Criterion {
    collect(10, "Monte Carlo invariants and parity ordering", |checks| {
        let jobs: Vec<(i32, u64)> = [2, 3].iter().flat_map(|&d| (1..=5).map(move |s| (d, s))).collect();
        let results: Vec<ChainResult> = jobs.par_iter().map(|&(d, s)| run_chain(d, s)).collect::<Result<_>>()?;
        let half_width = Protocol::default().box_half_width;
        for r in results {
            let name = format!("d={} seed={}", r.degree, r.seed);
            checks.push(Check::above(format!("{name} min pair distance over snapshots"), r.min_distance, 2.0));
            checks.push(Check::at_most(format!("{name} max |coordinate| over snapshots"), r.max_coordinate, half_width));
            let nan = f64::NAN;
            match r.degree {
                2 => checks.push(Check::at_least(format!("{name} NN mean cos(dw)"), r.nn_cos[0].unwrap_or(nan), 0.5)),
                _ => checks.push(Check::at_most(format!("{name} NN mean cos(2dw)"), r.nn_cos[1].unwrap_or(nan), -0.5)),
            }
            checks.push(Check::at_least(
                format!("{name} second-NN mean cos((d-1)dw)"),
                r.second_cos.unwrap_or(nan),
                0.5,
            ));
            checks.push(Check::at_most(format!("{name} runtime s"), r.seconds, 600.0));
        }
        Ok(())
    })
}

fn oracle_equivalence() -> Criterion {
    collect(11, "collocation vs finite differences", |checks| {
        let eps = 0.5;
        let (h, padding): (f64, f64) = (0.1, 10.0);
        let tolerance = 0.01f64.max((-padding).exp());
        let cases = [
            ("g=(1;1) b=1", 1.0, constant(1.0), constant(1.0)),
            ("g=(1;-1) b=2", 2.0, constant(1.0), constant(-1.0)),
            ("d=2 omega=(0;0.7) b=1", 1.0, BoundaryData::canonical(2, 0.0), BoundaryData::canonical(2, 0.7)),
        ];
        for (name, b, g1, g2) in cases {
            let cfg = pair(eps, b, g1, g2)?;
            let col = solve_collocation(&cfg, 32, 160)?;
            let fd = solve_fd(&cfg, h, padding)?;
            checks.push(Check::at_most(format!("{name} relative difference"), (fd.energy / col.energy - 1.0).abs(), tolerance));
        }
        Ok(())
    })
}
