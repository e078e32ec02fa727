use std::fs;
use std::path::{Path, PathBuf};

use photonloc::dirac::klein_gordon_residual;
use photonloc::report::{Format, Table, Value};
use photonloc::suites::{self, Suite, VerifyOptions};
use photonloc::waveguide::{
    axial_wavenumber, decompose, dispersion, rest_frame_rapidity, si, tunneling_predicate,
    velocities, AxialWave, TunnelingVerdict, WaveguideMode, WaveguideSpec,
};

use crate::args::{Cli, Command, Common};
use crate::config::Config;
use crate::CliError;

type Result<T> = std::result::Result<T, CliError>;

struct Ctx {
    config: Config,
    common: Common,
}

impl Ctx {
    fn pick<T: std::str::FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        self.config.pick(flag, key)
    }

    fn require<T: std::str::FromStr>(&self, flag: Option<T>, key: &str) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        self.pick(flag, key)?.ok_or_else(|| CliError::input(format!("missing --{key}")))
    }

    fn real(&self, flag: Option<f64>, key: &str) -> Result<f64> {
        finite(self.require(flag, key)?, key)
    }

    fn si(&self) -> Result<bool> {
        self.config.flag(self.common.si, "si")
    }

    fn format(&self) -> Result<Format> {
        self.pick(self.common.format.clone(), "format")?
            .map_or(Ok(Format::Csv), |f: String| f.parse().map_err(CliError::input))
    }

    fn spec(&self) -> Result<WaveguideSpec> {
        let b1 = self.real(self.common.b1, "b1")?;
        let b2 = self.real(self.common.b2, "b2")?;
        let spec = WaveguideSpec::new(b1, b2)?;
        if spec.swapped {
            eprintln!("note: b1 < b2, dimensions swapped so that b1 = {b2}, b2 = {b1}");
        }
        Ok(spec)
    }

    fn mode(&self) -> Result<WaveguideMode> {
        let spec = self.spec()?;
        let r = self.pick(self.common.r, "r")?.unwrap_or(1);
        let s = self.pick(self.common.s, "s")?.unwrap_or(0);
        Ok(WaveguideMode::new(spec, r, s)?)
    }

    fn emit(&self, table: &Table) -> Result<()> {
        let text = table.render(self.format()?);
        match self.pick(self.common.out.clone(), "out")? {
            Some(path) => write_file(&path, &text),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn finite(x: f64, key: &str) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(CliError::input(format!("--{key} must be finite")))
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))
}

pub fn run(cli: Cli) -> Result<u8> {
    let config = match &cli.common.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
            Config::parse(&text)?
        }
        None => Config::default(),
    };
    let ctx = Ctx { config, common: cli.common };
    match cli.command {
        Command::Modes { max_r, max_s } => modes(&ctx, max_r, max_s),
        Command::Dispersion { omega_min, omega_max, steps, svg } => {
            dispersion_sweep(&ctx, omega_min, omega_max, steps, svg)
        }
        Command::Decompose { k3, azimuth } => decompose_cmd(&ctx, k3, azimuth),
        Command::Boost { k3, rapidity } => boost(&ctx, k3, rapidity),
        Command::Tunneling { k3, new_b1, new_b2, new_r, new_s } => {
            tunneling(&ctx, k3, new_b1, new_b2, new_r, new_s)
        }
        Command::Verify { suite, drop_k_term } => verify(&ctx, suite, drop_k_term),
    }
}

fn modes(ctx: &Ctx, max_r: Option<u32>, max_s: Option<u32>) -> Result<u8> {
    let spec = ctx.spec()?;
    let max_r = ctx.pick(max_r, "max-r")?.unwrap_or(3);
    let max_s = ctx.pick(max_s, "max-s")?.unwrap_or(3);
    if max_r < 1 {
        return Err(CliError::input("--max-r must be at least 1"));
    }
    let mut list = Vec::new();
    for r in 1..=max_r {
        for s in 0..=max_s {
            list.push(WaveguideMode::new(spec, r, s)?);
        }
    }
    list.sort_by(|a, b| a.cutoff().total_cmp(&b.cutoff()).then((a.r, a.s).cmp(&(b.r, b.s))));
    let si_units = ctx.si()?;
    let mut t = if si_units {
        Table::new(["r", "s", "cutoff_hz", "mass_per_m", "compton_wavelength_m"])
    } else {
        Table::new(["r", "s", "cutoff", "mass", "compton_wavelength"])
    };
    for m in list {
        let cutoff = if si_units { si::cutoff_frequency_hz(&m) } else { m.cutoff() };
        t.push(vec![m.r.into(), m.s.into(), cutoff.into(), m.mass().into(), m.compton_wavelength().into()]);
    }
    ctx.emit(&t)?;
    Ok(0)
}

fn dispersion_sweep(
    ctx: &Ctx,
    omega_min: Option<f64>,
    omega_max: Option<f64>,
    steps: Option<usize>,
    svg: Option<PathBuf>,
) -> Result<u8> {
    let m = ctx.mode()?;
    let si_units = ctx.si()?;
    let to_natural = |x: f64| if si_units { si::hz_to_wavenumber(x) } else { x };
    let lo = ctx.real(omega_min, "omega-min")?;
    let hi = ctx.real(omega_max, "omega-max")?;
    let steps = ctx.require(steps, "steps")?;
    if steps < 2 {
        return Err(CliError::input("--steps must be at least 2"));
    }
    if hi <= lo {
        return Err(CliError::input("--omega-max must exceed --omega-min"));
    }
    let lo_n = to_natural(lo);
    if lo_n <= m.cutoff() {
        return Err(CliError::input(format!(
            "range starts at or below cutoff {}",
            if si_units { si::cutoff_frequency_hz(&m) } else { m.cutoff() }
        )));
    }
    let mut t = if si_units {
        Table::new(["frequency_hz", "k3_per_m", "vg_m_per_s", "vp_m_per_s", "lambda_g_m", "kg_residual"])
    } else {
        Table::new(["omega", "k3", "E", "p", "vg", "vp", "lambda_g", "kg_residual"])
    };
    let mut curve = Vec::with_capacity(steps);
    for i in 0..steps {
        let x = lo + (hi - lo) * i as f64 / (steps - 1) as f64;
        let omega = to_natural(x);
        let AxialWave::Propagating { k3 } = axial_wavenumber(&m, omega)? else {
            unreachable!("range checked above cutoff");
        };
        let v = velocities(&m, omega)?;
        let d = dispersion(&m, k3)?;
        let kg = klein_gordon_residual(&m, k3)?;
        let kg_residual = kg.mass_shell.max(kg.chain) / (d.energy * d.energy);
        curve.push((k3, omega));
        let row: Vec<Value> = if si_units {
            vec![
                x.into(),
                k3.into(),
                si::velocity_to_si(v.group).into(),
                si::velocity_to_si(v.phase).into(),
                v.guide_wavelength.into(),
                kg_residual.into(),
            ]
        } else {
            vec![
                omega.into(),
                k3.into(),
                d.energy.into(),
                d.momentum.into(),
                v.group.into(),
                v.phase.into(),
                v.guide_wavelength.into(),
                kg_residual.into(),
            ]
        };
        t.push(row);
    }
    if let Some(path) = ctx.pick(svg, "svg")? {
        write_file(&path, &svg_chart(&curve, m.cutoff()))?;
    }
    ctx.emit(&t)?;
    Ok(0)
}

/// Polyline of ω against k3 with the light line and the cutoff for reference.
fn svg_chart(points: &[(f64, f64)], cutoff: f64) -> String {
    const W: f64 = 480.0;
    const H: f64 = 320.0;
    const PAD: f64 = 40.0;
    let kmax = points.iter().map(|p| p.0).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let wmax = points.iter().map(|p| p.1).fold(0.0, f64::max);
    let sx = |k: f64| PAD + k / kmax * (W - 2.0 * PAD);
    let sy = |w: f64| H - PAD - w / wmax * (H - 2.0 * PAD);
    let path: Vec<String> = points.iter().map(|&(k, w)| format!("{:.2},{:.2}", sx(k), sy(w))).collect();
    let light = kmax.min(wmax);
    format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n",
            "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
            "  <line x1=\"{p}\" y1=\"{b:.2}\" x2=\"{r:.2}\" y2=\"{b:.2}\" stroke=\"black\"/>\n",
            "  <line x1=\"{p}\" y1=\"{b:.2}\" x2=\"{p}\" y2=\"{p}\" stroke=\"black\"/>\n",
            "  <line x1=\"{p}\" y1=\"{c:.2}\" x2=\"{r:.2}\" y2=\"{c:.2}\" stroke=\"grey\" stroke-dasharray=\"4 4\"/>\n",
            "  <line x1=\"{p}\" y1=\"{b:.2}\" x2=\"{lx:.2}\" y2=\"{ly:.2}\" stroke=\"grey\"/>\n",
            "  <polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"{pts}\"/>\n",
            "  <text x=\"{tx:.2}\" y=\"{ty:.2}\" font-size=\"12\">k3</text>\n",
            "  <text x=\"8\" y=\"{p}\" font-size=\"12\">omega</text>\n",
            "</svg>\n"
        ),
        w = W,
        h = H,
        p = PAD,
        b = H - PAD,
        r = W - PAD,
        c = sy(cutoff),
        lx = sx(light),
        ly = sy(light),
        pts = path.join(" "),
        tx = W - PAD,
        ty = H - PAD / 3.0,
    )
}

fn decompose_cmd(ctx: &Ctx, k3: Option<f64>, azimuth: Option<f64>) -> Result<u8> {
    let m = ctx.mode()?;
    let k3 = ctx.real(k3, "k3")?;
    let azimuth = finite(ctx.pick(azimuth, "azimuth")?.unwrap_or_else(|| m.transverse_azimuth()), "azimuth")?;
    let d = decompose(&m, k3, azimuth)?;
    let mut t = Table::new(["vector", "t", "x", "y", "z", "minkowski_norm"]);
    for (name, v) in [("k", d.k), ("k_l", d.k_l), ("k_t", d.k_t), ("eta", d.eta)] {
        let [a, b, c, e] = v.to_array();
        t.push(vec![name.into(), a.into(), b.into(), c.into(), e.into(), v.norm_sqr().into()]);
    }
    ctx.emit(&t)?;
    Ok(0)
}

fn boost(ctx: &Ctx, k3: Option<f64>, rapidity: Option<f64>) -> Result<u8> {
    let m = ctx.mode()?;
    let k3 = ctx.real(k3, "k3")?;
    let chi = finite(ctx.pick(rapidity, "rapidity")?.unwrap_or(0.0), "rapidity")?;
    let d = decompose(&m, k3, m.transverse_azimuth())?;
    let b = d.k_l.boost(chi);
    let mut t = Table::new(["rapidity", "energy", "momentum", "minkowski_norm", "mass", "rest_rapidity"]);
    t.push(vec![
        chi.into(),
        b.time.into(),
        b.space.z.into(),
        b.norm_sqr().into(),
        m.mass().into(),
        rest_frame_rapidity(&m, k3)?.into(),
    ]);
    ctx.emit(&t)?;
    Ok(0)
}

fn tunneling(
    ctx: &Ctx,
    k3: Option<f64>,
    new_b1: Option<f64>,
    new_b2: Option<f64>,
    new_r: Option<u32>,
    new_s: Option<u32>,
) -> Result<u8> {
    let old = ctx.mode()?;
    let k3 = ctx.real(k3, "k3")?;
    let nb1 = ctx.real(new_b1, "new-b1")?;
    let nb2 = ctx.real(new_b2, "new-b2")?;
    let nr = ctx.pick(new_r, "new-r")?.unwrap_or(old.r);
    let ns = ctx.pick(new_s, "new-s")?.unwrap_or(old.s);
    let new = WaveguideMode::new(WaveguideSpec::new(nb1, nb2)?, nr, ns)?;
    let a = tunneling_predicate(&old, k3, &new)?;
    let (verdict, rapidity) = match a.verdict {
        TunnelingVerdict::Propagates => ("propagates", Value::Missing),
        TunnelingVerdict::EvanescentInSomeFrame { rapidity } => ("evanescent_in_some_frame", rapidity.into()),
    };
    let si_units = ctx.si()?;
    let mut t = if si_units {
        Table::new(["m_old_hz", "compton_wavelength_m", "cutoff_new_hz", "rest_rapidity", "verdict", "rapidity"])
    } else {
        Table::new(["m_old", "compton_wavelength", "cutoff_new", "rest_rapidity", "verdict", "rapidity"])
    };
    let freq = |x: f64| if si_units { si::wavenumber_to_hz(x) } else { x };
    t.push(vec![
        freq(a.old_mass).into(),
        a.compton_wavelength.into(),
        freq(a.new_cutoff).into(),
        a.rest_rapidity.into(),
        verdict.into(),
        rapidity,
    ]);
    ctx.emit(&t)?;
    Ok(0)
}

fn verify(ctx: &Ctx, suite: Option<String>, drop_k_term: bool) -> Result<u8> {
    let defaults = VerifyOptions::default();
    let selector = ctx.pick(suite, "suite")?.unwrap_or_else(|| "all".into());
    let chosen: Vec<Suite> = if selector == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![selector.parse().map_err(CliError::input)?]
    };
    let step = finite(ctx.pick(ctx.common.h, "h")?.unwrap_or(defaults.step), "h")?;
    let tolerance = finite(ctx.pick(ctx.common.tol, "tol")?.unwrap_or(defaults.tolerance), "tol")?;
    if tolerance <= 0.0 {
        return Err(CliError::input("--tol must be positive"));
    }
    let opts = VerifyOptions {
        seed: ctx.pick(ctx.common.seed, "seed")?.unwrap_or(defaults.seed),
        step,
        tolerance,
        drop_k_term: ctx.config.flag(drop_k_term, "drop-k-term")?,
    };
    let checks = suites::run(&chosen, &opts)?;
    ctx.emit(&suites::checks_table(&checks))?;
    let failed = checks.iter().filter(|c| !c.passed()).count();
    if failed > 0 {
        eprintln!("{failed} of {} checks failed", checks.len());
        Ok(1)
    } else {
        Ok(0)
    }
}
