//! Command-line front end. [`run`] returns the exit code and the text
//! written to stdout and stderr so it can be tested without a process.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num::BigRational;

use crate::chain::{Chain, Cochain};
use crate::comass::{approx, linf_min_representative_with, simplicial_comass_with, Engine};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::gadget::{build_gadget, LatticeBasis};
use crate::hardness::{max_enum_from_env, min_comass_search, ratio_to, svp_linf_bruteforce, Mode, RootEstimate};
use crate::io;
use crate::lip::{
    absolute_lower_bound, lip_bounds_from_comass, verify_certificate, CertBundle, LowerBoundConfig, Rejection, Verdict,
    CONSTANT_BANNER,
};
use crate::map::SimplicialMap;
use crate::normalize::round_cocycle;
use crate::surface::{build_net_surface, epsilon_girth};

#[derive(Parser, Debug)]
#[command(name = "comass", about = "Simplicial comass, lattice gadgets and Lipschitz certificates")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EngineArg {
    Exact,
    Certified,
    Auto,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Engine {
        match e {
            EngineArg::Exact => Engine::Exact,
            EngineArg::Certified => Engine::Certified,
            EngineArg::Auto => Engine::Auto,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Simplicial comass of a cocycle, with a maximizing cycle.
    Comass {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
        /// Also print the minimal sup-norm representative.
        #[arg(long)]
        dual: bool,
        #[arg(long, value_enum, default_value = "auto")]
        engine: EngineArg,
    },
    /// Round a cohomologous real representative back to an integral cocycle.
    Normalize {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
        /// Real representative ẑ; defaults to the sup-norm minimizer.
        #[arg(long)]
        zhat: Option<PathBuf>,
    },
    /// Build the gadget complex of a lattice basis.
    Gadget {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        dim: usize,
        /// Complex file; generator cocycles and marked cycles go next to it.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Build report file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Brute-force shortest sup-norm lattice vector.
    Svp {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        bound: i64,
    },
    /// Minimal comass over bounded integer combinations of generators.
    MinComass {
        #[arg(long)]
        complex: PathBuf,
        /// Comma-separated cochain files.
        #[arg(long, value_delimiter = ',')]
        gens: Vec<PathBuf>,
        #[arg(long)]
        bound: i64,
        /// nonzero | neq0:<cycle file> | one:<cycle file>
        #[arg(long, default_value = "nonzero")]
        mode: String,
        /// Also print the n-th root of the minimum.
        #[arg(long)]
        root: Option<usize>,
    },
    /// Verify a simplicial Lipschitz certificate.
    CheckCert {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        codomain: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        t: u32,
    },
    /// Counting lower bound on the Lipschitz constant of nontrivial maps.
    LowerBound {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 2)]
        smax: u32,
    },
    /// Closed surface through a net of the complex representing a 2-class.
    Surface {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        class: PathBuf,
        #[arg(long)]
        scale: String,
        /// Output file for the surface complex.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output file for the vertex map into the complex.
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// ε-density and fiber diameter of a simplicial map.
    Girth {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        codomain: PathBuf,
        #[arg(long)]
        eps: String,
    },
    /// Gadget, minimal comass and SVP side by side.
    Pipeline {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        bound: i64,
        #[arg(long, default_value_t = 1.0)]
        c_upper: f64,
    },
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Malformed(_) | Error::Io(_) => 2,
        _ => 1,
    }
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code: 2, stdout: String::new(), stderr: text }
            } else {
                Output { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match dispatch(cli.cmd) {
        Ok((code, stdout)) => Output { code, stdout, stderr: String::new() },
        Err(e) => Output { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn with_file<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { line, msg } => Error::Parse { line, msg: format!("{}: {msg}", path.display()) },
        other => other,
    })
}

fn load_complex(path: &Path) -> Result<SimplicialComplex> {
    with_file(path, io::parse_complex(&read(path)?))
}

fn load_cochain(path: &Path) -> Result<Cochain> {
    with_file(path, io::parse_cells(&read(path)?))
}

fn load_chain(path: &Path) -> Result<Chain> {
    with_file(path, io::parse_cells(&read(path)?))
}

fn load_lattice(path: &Path) -> Result<LatticeBasis> {
    with_file(path, io::parse_lattice(&read(path)?))
}

fn rational(s: &str) -> Result<BigRational> {
    s.parse().map_err(|_| Error::Malformed(format!("bad rational '{s}'")))
}

fn write(path: &Path, text: &str) -> Result<()> {
    Ok(std::fs::write(path, text)?)
}

/// Decimal with twelve significant digits.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (11 - mag).max(0) as usize;
    format!("{x:.decimals$}")
}

fn join(v: &[i64]) -> String {
    v.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" ")
}

fn dispatch(cmd: Cmd) -> Result<(i32, String)> {
    let mut out = String::new();
    match cmd {
        Cmd::Comass { complex, cocycle, dual, engine } => {
            let x = load_complex(&complex)?;
            let b = load_cochain(&cocycle)?;
            if dual {
                let rep = linf_min_representative_with(&x, &b, engine.into())?;
                writeln!(out, "# dual {}", rep.value).unwrap();
                writeln!(out, "# minimal sup-norm representative").unwrap();
                out.push_str(&io::write_cells(&rep.zhat));
            } else {
                let c = simplicial_comass_with(&x, &b, engine.into())?;
                writeln!(out, "# comass {}", c.value).unwrap();
                writeln!(out, "# approx {}", sig12(approx(&c))).unwrap();
                writeln!(out, "# witness cycle, l1 norm 1").unwrap();
                out.push_str(&io::write_cells(&c.witness));
            }
        }
        Cmd::Normalize { complex, cocycle, zhat } => {
            let x = load_complex(&complex)?;
            let z = load_cochain(&cocycle)?;
            let zhat = match zhat {
                Some(p) => load_cochain(&p)?,
                None => linf_min_representative_with(&x, &z, Engine::Auto)?.zhat,
            };
            let r = round_cocycle(&x, &z, &zhat, z.degree())?;
            writeln!(out, "# zhat, sup norm {}", zhat.linf_norm()).unwrap();
            out.push_str(&io::write_cells(&zhat));
            writeln!(out, "# bhat").unwrap();
            out.push_str(&io::write_cells(&r.bhat));
            writeln!(out, "# zprime, sup norm {}", r.zprime.linf_norm()).unwrap();
            out.push_str(&io::write_cells(&r.zprime));
            writeln!(out, "# bound {} (coarse {})", r.sharp_bound, r.coarse_bound).unwrap();
        }
        Cmd::Gadget { lattice, dim, out: cx, report } => {
            let basis = load_lattice(&lattice)?;
            let g = build_gadget(&basis, dim)?;
            writeln!(out, "simplices {}", g.report.total).unwrap();
            writeln!(out, "size_bound {}", g.report.size_bound).unwrap();
            if let Some(cx) = cx {
                let dir = cx.parent().map(Path::to_path_buf).unwrap_or_default();
                if !dir.as_os_str().is_empty() {
                    std::fs::create_dir_all(&dir)?;
                }
                write(&cx, &io::write_complex(&g.x))?;
                for (j, c) in g.generator_cocycles.iter().enumerate() {
                    write(&dir.join(format!("gen_{j}.ch")), &io::write_cells(c))?;
                }
                for (j, c) in g.sigma_cycles.iter().enumerate() {
                    write(&dir.join(format!("sigma_{j}.ch")), &io::write_cells(c))?;
                }
                for (i, c) in g.s_cycles.iter().enumerate() {
                    write(&dir.join(format!("s_{i}.ch")), &io::write_cells(c))?;
                }
            }
            if let Some(p) = report {
                if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                    std::fs::create_dir_all(dir)?;
                }
                write(&p, &g.report.render())?;
            }
        }
        Cmd::Svp { lattice, bound } => {
            let basis = load_lattice(&lattice)?;
            let (norm, coeffs) = svp_linf_bruteforce(&basis, bound, max_enum_from_env())?;
            writeln!(out, "svp {norm} coeffs {} vector {}", join(&coeffs), join(&basis.combine(&coeffs))).unwrap();
        }
        Cmd::MinComass { complex, gens, bound, mode, root } => {
            let x = load_complex(&complex)?;
            let gens = gens.iter().map(|p| load_cochain(p)).collect::<Result<Vec<_>>>()?;
            let mode = match mode.split_once(':') {
                None if mode == "nonzero" => Mode::Nonzero,
                Some(("neq0", p)) => Mode::PairingNonzero(load_chain(Path::new(p))?),
                Some(("one", p)) => Mode::PairingOne(load_chain(Path::new(p))?),
                _ => return Err(Error::Malformed(format!("unknown mode '{mode}'"))),
            };
            let r = min_comass_search(&x, &gens, bound, &mode)?;
            writeln!(out, "value {} coeffs {}", r.value.value, join(&r.coeffs)).unwrap();
            if let Some(n) = root {
                let est = RootEstimate::new(r.value.value, n);
                writeln!(out, "root {} = {}", est.symbolic(), sig12(est.value)).unwrap();
            }
        }
        Cmd::CheckCert { domain, map, codomain, target, s, t } => {
            let dom = load_complex(&domain)?;
            let cod = load_complex(&codomain)?;
            let vm = with_file(&map, io::parse_vertex_map(&read(&map)?))?;
            if let Some(v) = dom.vertices().into_iter().find(|v| !vm.contains_key(v)) {
                return Err(Error::Malformed(format!("map does not assign domain vertex {v}")));
            }
            let target = load_cochain(&target)?;
            target.check_on(&dom)?;
            let cert = CertBundle { s, t, map: SimplicialMap::unchecked(dom, cod, vm) };
            return Ok(match verify_certificate(&cert, &target) {
                Verdict::Accepted { bound } => (0, format!("ACCEPT bound {bound}\n")),
                Verdict::Rejected(r) => {
                    let why = match r {
                        Rejection::NonSimplicial(s) => format!("non-simplicial {s:?}"),
                        Rejection::ClassMismatch => "class-mismatch".into(),
                        Rejection::NoFundamentalClass => "no-fundamental-class".into(),
                    };
                    (1, format!("REJECT {why}\n"))
                }
            });
        }
        Cmd::LowerBound { complex, dim, smax } => {
            let x = load_complex(&complex)?;
            let cfg = LowerBoundConfig { max_subdivision: smax, ..Default::default() };
            let lb = absolute_lower_bound(&x, dim, &cfg);
            writeln!(out, "domain_count {}", lb.domain_count).unwrap();
            for (t, f) in &lb.trace {
                writeln!(out, "probe t={t} facets={f}").unwrap();
            }
            writeln!(out, "t_star {}", lb.t_star).unwrap();
            writeln!(out, "bound {} ({CONSTANT_BANNER})", lb.bound).unwrap();
        }
        Cmd::Surface { complex, class, scale, out: cx_out, map } => {
            let x = load_complex(&complex)?;
            let h = load_chain(&class)?;
            let ns = build_net_surface(&x, &h, &rational(&scale)?)?;
            out.push_str(&ns.report.render());
            if let Some(p) = cx_out {
                write(&p, &io::write_complex(&ns.sigma))?;
            }
            if let Some(p) = map {
                write(&p, &io::write_vertex_map(&ns.map.vertex_map))?;
            }
        }
        Cmd::Girth { domain, map, codomain, eps } => {
            let dom = load_complex(&domain)?;
            let cod = load_complex(&codomain)?;
            let vm = with_file(&map, io::parse_vertex_map(&read(&map)?))?;
            let f = SimplicialMap::new(dom, cod, vm)?;
            writeln!(out, "{}", epsilon_girth(&f, &rational(&eps)?).render()).unwrap();
        }
        Cmd::Pipeline { lattice, dim, bound, c_upper } => {
            let basis = load_lattice(&lattice)?;
            let g = build_gadget(&basis, dim)?;
            let r = min_comass_search(&g.x, &g.generator_cocycles, bound, &Mode::Nonzero)?;
            let (svp, coeffs) = svp_linf_bruteforce(&basis, bound, max_enum_from_env())?;
            let lb = lip_bounds_from_comass(approx(&r.value), dim, c_upper);
            writeln!(out, "{:<12} {}", "simplices", g.report.total).unwrap();
            writeln!(out, "{:<12} {} = {}", "min_comass", r.value.value, sig12(approx(&r.value))).unwrap();
            writeln!(out, "{:<12} {}", "argmin", join(&r.coeffs)).unwrap();
            writeln!(out, "{:<12} {}", "svp_linf", svp).unwrap();
            writeln!(out, "{:<12} {}", "svp_coeffs", join(&coeffs)).unwrap();
            writeln!(out, "{:<12} {}", "ratio", sig12(ratio_to(&r.value.value, svp))).unwrap();
            writeln!(out, "{:<12} {}", "lip_lower", sig12(lb.lower)).unwrap();
            writeln!(out, "{:<12} {}", "lip_upper", sig12(lb.upper)).unwrap();
            writeln!(out, "({CONSTANT_BANNER})").unwrap();
        }
    }
    Ok((0, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(sig12(0.25), "0.250000000000");
        assert_eq!(sig12(1234.5), "1234.50000000");
        assert_eq!(sig12(0.0), "0");
    }

    #[test]
    fn usage_errors_exit_two() {
        let o = run(["comass", "frobnicate"]);
        assert_eq!(o.code, 2);
        assert!(o.stderr.contains("Usage"));
        let o = run(["comass", "svp", "--lattice", "/nonexistent/lattice", "--bound", "1"]);
        assert_eq!(o.code, 2);
        assert_eq!(run(["comass", "--help"]).code, 0);
    }
}
