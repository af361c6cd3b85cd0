use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use klein_core::arrangement::{conic_search_exact, line_census, CensusReport, LinesJson};
use klein_core::incidence::{census_type, generation_closure, generation_number, isomorphic, GeometricLattice, IncidenceJson, IncidenceStructure};
use klein_core::invariants::build_invariants;
use klein_core::polyalg::format_form;
use klein_core::models::catalog::{catalog_21, catalog_28};
use klein_core::models::derived::{gr_d28, incidence_sum_49, parse_pair, DerivedConfig, DerivedConfigJson};
use klein_core::models::gr::{quad_orbits, GrModel};
use klein_core::models::klein::{kprime_structure, KPRIME, KPRIME_EXTRA_TRIPLES, REAL9};
use klein_core::models::{gr_model, half_orbit_42_config, klein_model};
use klein_core::projplane::ProjectivePoint;
use klein_core::realize::{conjecture_sweep, realize_augmented, Ellipse};
use klein_forge::report::Report;
use klein_forge::suites::{self, Options, Suite};
use klein_forge::svg::{render, Scene, Viewport};
use serde_json::json;

#[derive(Parser)]
#[command(name = "klein-forge", version, about = "Verifier and builder for the Klein arrangement and its relatives")]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Include wall-clock timings in the report.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite against the golden values.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 50)]
        digits: u32,
        #[arg(long, default_value_t = 32)]
        seeds: usize,
    },
    /// Singular-point census of a line arrangement.
    Census {
        #[arg(long, value_enum, conflicts_with = "input")]
        model: Option<LineModel>,
        /// Lines as JSON: {"field": {...}, "lines": [...]}.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Klein invariants.
    Invariants {
        /// Check the invariant identities.
        #[arg(long)]
        verify: bool,
        /// Print the forms.
        #[arg(long)]
        emit_forms: bool,
    },
    /// Build a derived configuration.
    Build {
        #[command(subcommand)]
        what: BuildCmd,
    },
    /// Conics through many points of a named point set.
    Search {
        #[arg(long, value_enum)]
        points: PointSet,
        #[arg(long, default_value = "12")]
        pair: String,
        #[arg(long, default_value_t = 8)]
        min: usize,
    },
    /// Isomorphism test between two incidence structures.
    Iso {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Generation closure of Klein lines (1-based), or g(L) without --seed.
    Genlines {
        #[arg(long, value_delimiter = ',')]
        seed: Vec<usize>,
    },
    /// Real realization of an incidence structure.
    Realize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 64)]
        seeds: usize,
        /// Extra concurrences to impose: block lists separated by ';'.
        #[arg(long)]
        concurrent: Option<String>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// EXPERIMENTAL circumconic sweep on the GR configuration.
    Conjecture {
        /// Target ellipse for the first orbit: cx,cy,a,b,rot.
        #[arg(long)]
        c1: Option<String>,
        /// Pin the second orbit to this ellipse instead of a free conic.
        #[arg(long)]
        c2: Option<String>,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        /// Perturbed samples, in addition to the unperturbed one.
        #[arg(long, default_value_t = 8)]
        samples: usize,
    },
    /// Render a model or configuration to SVG.
    Export {
        #[arg(long, value_enum, conflicts_with = "input")]
        model: Option<Figure>,
        /// A derived configuration in JSON.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value = "12")]
        pair: String,
        #[arg(long)]
        svg: PathBuf,
        /// Half-width of the square window.
        #[arg(long, default_value_t = 2.5)]
        half: f64,
    },
}

#[derive(Subcommand)]
enum BuildCmd {
    /// Configurations on the double points of two GR orbits.
    GrDerived {
        #[arg(long, default_value = "12")]
        pair: String,
        #[arg(long, value_enum, default_value_t = What::Lines28)]
        what: What,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    #[value(name = "28")]
    Lines28,
    #[value(name = "49")]
    Sum49,
    #[value(name = "42")]
    Half42,
    #[value(name = "conics")]
    Conics,
}

#[derive(Clone, Copy, ValueEnum)]
enum LineModel {
    Klein,
    Kprime,
    Real9,
    Gr,
}

#[derive(Clone, Copy, ValueEnum)]
enum PointSet {
    KleinTriples,
    GrQuads,
    GrD28,
    GrD49,
}

#[derive(Clone, Copy, ValueEnum)]
enum Figure {
    Gr,
    D28,
    D49,
    Half42,
    Conics21,
    Conics28,
    Kprime,
}

fn read(path: &PathBuf) -> Result<Vec<u8>> {
    std::fs::read(path).with_context(|| format!("reading {}", path.display()))
}

fn affine(p: &ProjectivePoint) -> [f64; 3] {
    p.coords().clone().map(|c| c.to_f64())
}

fn config_scene(cfg: &DerivedConfig) -> Result<Scene> {
    if let Some(p) = cfg.points.first() {
        if !p.field().is_real() {
            bail!("SVG export needs a real field");
        }
    }
    Ok(Scene {
        points: cfg.points.iter().map(affine).collect(),
        lines: cfg.lines.iter().map(|l| (l.coords().clone().map(|c| c.to_f64()), 0)).collect(),
        conics: cfg.conics.iter().map(|c| (c.to_f64(), 0)).collect(),
    })
}

fn with_orbit_colors(mut scene: Scene, orbits: &[Vec<usize>]) -> Scene {
    for (k, o) in orbits.iter().enumerate() {
        for &i in o {
            scene.conics[i].1 = k;
        }
    }
    scene
}

fn gr_scene(m: &GrModel) -> Result<Scene> {
    let quads: Vec<ProjectivePoint> = quad_orbits(m)?.into_iter().flat_map(|(_, v)| v).collect();
    Ok(Scene {
        points: quads.iter().map(affine).collect(),
        lines: m.lines.iter().enumerate().map(|(i, l)| (l.coords().clone().map(|c| c.to_f64()), GrModel::orbit(i))).collect(),
        conics: Vec::new(),
    })
}

fn write_svg(path: &PathBuf, scene: &Scene, half: f64, r: &mut Report) -> Result<()> {
    let text = render(scene, &Viewport { half, ..Viewport::default() });
    std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
    r.info("svg", format!("{} ({} bytes)", path.display(), text.len()));
    Ok(())
}

fn kprime_scene(seeds: usize) -> Result<Scene> {
    let k = klein_model()?;
    let s = kprime_structure(&k)?;
    let extra: Vec<Vec<usize>> =
        KPRIME_EXTRA_TRIPLES.iter().map(|t| t.iter().map(|l| KPRIME.iter().position(|x| x == l).expect("label")).collect()).collect();
    let rep = realize_augmented(&s, &extra, seeds)?;
    let real = rep.realization.filter(|_| rep.success).context("no realization found")?;
    Ok(realization_scene(&real.points, &real.lines))
}

fn realization_scene(points: &[[f64; 3]], lines: &[[f64; 3]]) -> Scene {
    // Normalize so the points sit in a unit-scale window.
    let aff: Vec<(f64, f64)> = points.iter().filter(|p| p[2].abs() > 1e-9).map(|p| (p[0] / p[2], p[1] / p[2])).collect();
    let n = aff.len().max(1) as f64;
    let (cx, cy) = (aff.iter().map(|p| p.0).sum::<f64>() / n, aff.iter().map(|p| p.1).sum::<f64>() / n);
    let r = aff.iter().map(|p| (p.0 - cx).hypot(p.1 - cy)).fold(1e-9, f64::max);
    let s = 2.0 / r;
    let tp = |p: &[f64; 3]| [(p[0] - cx * p[2]) * s, (p[1] - cy * p[2]) * s, p[2]];
    // Lines transform by the inverse transpose of the affine map.
    let tl = |l: &[f64; 3]| [l[0] / s, l[1] / s, l[2] + l[0] * cx + l[1] * cy];
    Scene { points: points.iter().map(tp).collect(), lines: lines.iter().map(|l| (tl(l), 0)).collect(), conics: Vec::new() }
}

fn run(cli: &Cli) -> Result<Report> {
    let args: Vec<String> = std::env::args().skip(1).filter(|a| a != "--timings").collect();
    let argv = args.join("\u{1f}");
    let report = |name: &str, files: &[&[u8]]| {
        let mut inputs: Vec<&[u8]> = vec![argv.as_bytes()];
        inputs.extend_from_slice(files);
        Report::new(name, &inputs).with_timings(cli.timings)
    };
    Ok(match &cli.command {
        Command::Verify { suite, digits, seeds } => {
            let mut r = report(&format!("verify {}", suite.name()), &[]);
            let opts = Options { digits: *digits, seeds: *seeds, ..Options::default() };
            suites::run(*suite, &mut r, &opts);
            r
        }
        Command::Census { model, input } => {
            let (mut r, lines) = match (model, input) {
                (_, Some(path)) => {
                    let bytes = read(path)?;
                    let j: LinesJson = serde_json::from_slice(&bytes).context("parsing lines JSON")?;
                    (report("census", &[&bytes]), j.parse()?.1)
                }
                (Some(m), None) => {
                    let lines = match m {
                        LineModel::Klein => klein_model()?.lines,
                        LineModel::Kprime => klein_model()?.kprime_lines(),
                        LineModel::Real9 => klein_model()?.select(&REAL9),
                        LineModel::Gr => gr_model()?.lines,
                    };
                    (report("census", &[]), lines)
                }
                (None, None) => bail!("census needs --model or --input"),
            };
            let arr = line_census(&lines)?;
            r.info("lines", lines.len());
            r.data = serde_json::to_value(CensusReport::from_exact(&arr))?;
            r
        }
        Command::Invariants { verify, emit_forms } => {
            let mut r = report("invariants", &[]);
            if *verify || !*emit_forms {
                suites::run(Suite::Invariants, &mut r, &Options::default());
            }
            if *emit_forms {
                let inv = build_invariants()?;
                r.data = json!({
                    "phi4": format_form(&inv.phi4),
                    "phi6": format_form(&inv.phi6),
                    "phi14": format_form(&inv.phi14),
                    "phi21": format_form(&inv.phi21),
                });
            }
            r
        }
        Command::Build { what: BuildCmd::GrDerived { pair, what, svg } } => {
            let mut r = report("build gr-derived", &[]);
            let m = gr_model()?;
            let p = parse_pair(pair)?;
            let (cfg, orbits) = match what {
                What::Lines28 => (gr_d28(&m, p)?, None),
                What::Sum49 => {
                    let s = incidence_sum_49(&gr_d28(&m, p)?)?;
                    r.info("self_reciprocal", s.self_reciprocal);
                    r.info("radius2", format!("{:.9}", s.circle.r2.to_f64()));
                    (s.config, None)
                }
                What::Half42 => (half_orbit_42_config(&m)?.1, None),
                What::Conics => {
                    let (fam, c) = catalog_28(&m, p)?;
                    for (o, t) in &c.deletions {
                        r.info(&format!("delete_orbit_{o}"), t);
                    }
                    for (i, o) in fam.orbits.iter().enumerate() {
                        r.info(&format!("orbit_{i}"), format!("{} {}, point degree {:?}", o.conics.len(), o.kind(), o.point_degree));
                    }
                    let orbits: Vec<Vec<usize>> = fam.orbits.iter().map(|o| o.conics.clone()).collect();
                    (c.config, Some(orbits))
                }
            };
            r.info("type", cfg.signature());
            if let Some(path) = svg {
                let mut scene = config_scene(&cfg)?;
                if let Some(o) = &orbits {
                    scene = with_orbit_colors(scene, o);
                }
                write_svg(path, &scene, 2.5, &mut r)?;
            }
            r.data = serde_json::to_value(cfg.to_json())?;
            r
        }
        Command::Search { points, pair, min } => {
            let mut r = report("search conics", &[]);
            let pts: Vec<ProjectivePoint> = match points {
                PointSet::KleinTriples => klein_model()?.triple_points,
                PointSet::GrQuads => quad_orbits(&gr_model()?)?.into_iter().flat_map(|(_, v)| v).collect(),
                PointSet::GrD28 => gr_d28(&gr_model()?, parse_pair(pair)?)?.points,
                PointSet::GrD49 => incidence_sum_49(&gr_d28(&gr_model()?, parse_pair(pair)?)?)?.config.points,
            };
            let hits = conic_search_exact(&pts, *min)?;
            r.info("points", pts.len());
            r.info("conics", hits.len());
            let s = IncidenceStructure::new(pts.len(), hits.iter().map(|h| h.points.clone()).collect())?;
            r.info("type", census_type(&s));
            r.data = json!(hits.iter().map(|h| json!({"points": h.points, "conic": h.conic.to_json()})).collect::<Vec<_>>());
            r
        }
        Command::Iso { a, b } => {
            let (ba, bb) = (read(a)?, read(b)?);
            let mut r = report("iso", &[&ba, &bb]);
            let ja: IncidenceJson = serde_json::from_slice(&ba).context("parsing --a")?;
            let jb: IncidenceJson = serde_json::from_slice(&bb).context("parsing --b")?;
            let (sa, sb) = (IncidenceStructure::from_json(&ja)?, IncidenceStructure::from_json(&jb)?);
            r.info("type_a", census_type(&sa));
            r.info("type_b", census_type(&sb));
            let w = isomorphic(&sa, &sb);
            r.info("isomorphic", w.is_some());
            r.data = json!({ "isomorphic": w.is_some(), "witness": w });
            r
        }
        Command::Genlines { seed } => {
            let mut r = report("genlines", &[]);
            let k = klein_model()?;
            let l = GeometricLattice::from_arrangement(&line_census(&k.lines)?)?;
            if seed.is_empty() {
                let g = generation_number(&l);
                r.info("g", g.g);
                r.data = serde_json::to_value(&g)?;
            } else {
                if seed.iter().any(|&s| s == 0 || s > 21) {
                    bail!("line labels run from 1 to 21");
                }
                let idx: Vec<usize> = seed.iter().map(|s| s - 1).collect();
                let c = generation_closure(&l, &idx);
                r.info("generates", c.generates);
                let labels: Vec<usize> = c.lines.iter().map(|i| i + 1).collect();
                r.data = json!({ "generates": c.generates, "lines": labels, "points": c.points.len() });
            }
            r
        }
        Command::Realize { input, seeds, concurrent, svg } => {
            let bytes = read(input)?;
            let mut r = report("realize", &[&bytes]);
            let j: IncidenceJson = serde_json::from_slice(&bytes).context("parsing incidence JSON")?;
            let s = IncidenceStructure::from_json(&j)?;
            let extra: Vec<Vec<usize>> = match concurrent {
                None => Vec::new(),
                Some(text) => text
                    .split(';')
                    .map(|g| g.split(',').map(|t| t.trim().parse::<usize>().context("block index")).collect::<Result<Vec<_>>>())
                    .collect::<Result<_>>()?,
            };
            let rep = realize_augmented(&s, &extra, *seeds)?;
            r.info("type", census_type(&s));
            r.info("success", rep.success);
            r.info("residual", format!("{:.3e}", rep.best_residual));
            if let (Some(path), Some(real)) = (svg, &rep.realization) {
                write_svg(path, &realization_scene(&real.points, &real.lines), 2.5, &mut r)?;
            }
            r.data = serde_json::to_value(&rep)?;
            r
        }
        Command::Conjecture { c1, c2, steps, samples } => {
            let mut r = report("conjecture", &[]);
            let c1 = c1.as_deref().map(Ellipse::parse).transpose()?;
            let c2 = c2.as_deref().map(Ellipse::parse).transpose()?;
            let sweep = conjecture_sweep(&gr_model()?, c1, c2, *steps, *samples + 1)?;
            r.info("label", sweep.label);
            let ok = sweep.samples.iter().filter(|s| s.converged).count();
            r.info("converged", format!("{ok} of {}", sweep.samples.len()));
            r.data = serde_json::to_value(&sweep)?;
            r
        }
        Command::Export { model, input, pair, svg, half } => {
            let bytes = input.as_ref().map(read).transpose()?;
            let mut r = report("export", &[bytes.as_deref().unwrap_or(&[])]);
            let scene = match (model, &bytes) {
                (_, Some(b)) => {
                    let j: DerivedConfigJson = serde_json::from_slice(b).context("parsing configuration JSON")?;
                    config_scene(&DerivedConfig::from_json(&j)?)?
                }
                (Some(f), None) => {
                    let m = gr_model()?;
                    let p = parse_pair(pair)?;
                    match f {
                        Figure::Gr => gr_scene(&m)?,
                        Figure::D28 => config_scene(&gr_d28(&m, p)?)?,
                        Figure::D49 => config_scene(&incidence_sum_49(&gr_d28(&m, p)?)?.config)?,
                        Figure::Half42 => config_scene(&half_orbit_42_config(&m)?.1)?,
                        Figure::Conics21 => {
                            let (_, configs) = catalog_21(&m)?;
                            let c = configs.iter().find(|c| c.resolution.is_some()).or(configs.first()).context("no (21_7) found")?;
                            let mut scene = config_scene(&c.config)?;
                            if let Some(classes) = &c.resolution {
                                scene = with_orbit_colors(scene, classes);
                            }
                            scene
                        }
                        Figure::Conics28 => {
                            let (fam, c) = catalog_28(&m, p)?;
                            let orbits: Vec<Vec<usize>> = fam.orbits.iter().map(|o| o.conics.clone()).collect();
                            with_orbit_colors(config_scene(&c.config)?, &orbits)
                        }
                        Figure::Kprime => kprime_scene(64)?,
                    }
                }
                (None, None) => bail!("export needs --model or --input"),
            };
            write_svg(svg, &scene, *half, &mut r)?;
            r
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("klein-forge: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(r) => {
            let mut text = if cli.pretty { r.to_text() } else { r.to_json() };
            text.push('\n');
            // A closed pipe downstream is not an error of ours.
            let _ = std::io::stdout().write_all(text.as_bytes());
            ExitCode::from(r.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("klein-forge: {e:#}");
            ExitCode::from(2)
        }
    }
}
