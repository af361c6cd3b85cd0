//! Verification suites. Each suite appends checks to a report; a suite that
//! errors out records a single failed check instead of aborting.

use std::collections::BTreeMap;

use clap::ValueEnum;
use klein_core::arrangement::{
    conic_search_exact, is_simplicial, jacobian_degree, line_census, per_curve_distribution, plucker_counts,
    transversality_check_exact, Arrangement,
};
use klein_core::incidence::{
    census_type, generation_closure, generation_number, isomorphic, resolvable, GeometricLattice, IncidenceStructure,
};
use klein_core::invariants::{build_invariants, numeric_pipeline, phi6_closed_form, verify_phi21_square_membership};
use klein_core::models::catalog::{catalog_49, point_conic_configs, ConicFamily};
use klein_core::models::derived::{gr_midcircles, incidence_sum_49};
use klein_core::models::gr::{gr_double_orbits, sort_real, GrModel};
use klein_core::models::klein::{
    kprime_printed, kprime_point12, kprime_structure, KleinModel, I_GR, KPRIME, KPRIME_EXTRA_TRIPLES, REAL9,
};
use klein_core::models::{gr_d28, gr_model, half_orbit_42_config, klein_model, subconfigs_14_2_7_4};
use klein_core::realize::{
    conjecture_sweep, evaluate_sample, line_census_f64, realize_augmented, realize_structure, sweep_frame,
    tangent_dimension, TangentReport,
};
use klein_core::Result;
use num_complex::Complex64;

use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Klein,
    Kprime,
    Invariants,
    Numeric,
    Roulleau,
    Plucker,
    Generation,
    Gr,
    Derived,
    Catalog,
    Realize,
    Conjecture,
    All,
}

impl Suite {
    pub const EACH: [Suite; 12] = [
        Suite::Klein,
        Suite::Kprime,
        Suite::Invariants,
        Suite::Numeric,
        Suite::Roulleau,
        Suite::Plucker,
        Suite::Generation,
        Suite::Gr,
        Suite::Derived,
        Suite::Catalog,
        Suite::Realize,
        Suite::Conjecture,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Klein => "klein",
            Suite::Kprime => "kprime",
            Suite::Invariants => "invariants",
            Suite::Numeric => "numeric",
            Suite::Roulleau => "roulleau",
            Suite::Plucker => "plucker",
            Suite::Generation => "generation",
            Suite::Gr => "gr",
            Suite::Derived => "derived",
            Suite::Catalog => "catalog",
            Suite::Realize => "realize",
            Suite::Conjecture => "conjecture",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    /// Working precision of the numeric pipeline.
    pub digits: u32,
    /// Random starts per realization.
    pub seeds: usize,
    /// Perturbed conjecture samples, in addition to the unperturbed one.
    pub samples: usize,
    pub steps: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { digits: 50, seeds: 32, samples: 8, steps: 20 }
    }
}

pub fn run(suite: Suite, r: &mut Report, opts: &Options) {
    if suite == Suite::All {
        for s in Suite::EACH {
            run(s, r, opts);
        }
        return;
    }
    let name = suite.name();
    let out = r.time(name, |r| match suite {
        Suite::Klein => klein(r),
        Suite::Kprime => kprime(r),
        Suite::Invariants => invariants(r),
        Suite::Numeric => numeric(r, opts),
        Suite::Roulleau => roulleau(r),
        Suite::Plucker => plucker(r),
        Suite::Generation => generation(r),
        Suite::Gr => gr(r),
        Suite::Derived => derived(r),
        Suite::Catalog => catalog(r),
        Suite::Realize => realize(r, opts),
        Suite::Conjecture => conjecture(r, opts),
        Suite::All => unreachable!(),
    });
    if let Err(e) = out {
        r.error(&format!("{name}.error"), e);
    }
}

fn tv(arr: &Arrangement, r: usize) -> usize {
    arr.t(r)
}

fn pair_count(arr: &Arrangement) -> usize {
    arr.census.iter().map(|c| c.multiplicity() * (c.multiplicity() - 1) / 2).sum()
}

/// Klein quadruple points against the 21 lines.
pub fn klein_21_4(k: &KleinModel) -> Result<IncidenceStructure> {
    IncidenceStructure::new(21, (0..21).map(|l| (0..21).filter(|&p| k.quad_lines[p].contains(&l)).collect()).collect())
}

/// Klein triple points against the 21 lines.
pub fn klein_28_21(k: &KleinModel) -> Result<IncidenceStructure> {
    IncidenceStructure::new(28, (0..21).map(|l| (0..28).filter(|&p| k.triple_lines[p].contains(&l)).collect()).collect())
}

/// The I_GR table as points against 0-based lines.
pub fn igr_structure() -> Result<IncidenceStructure> {
    IncidenceStructure::new(21, (1..=21).map(|l| (0..21).filter(|&p| I_GR[p].contains(&l)).collect()).collect())
}

/// GR quadruple points against the 21 GR lines.
pub fn gr_21_4(m: &GrModel) -> Result<IncidenceStructure> {
    let arr = m.census()?;
    let quads: Vec<Vec<usize>> = arr.points_of_multiplicity(4).into_iter().map(|c| c.curves.clone()).collect();
    IncidenceStructure::new(quads.len(), (0..21).map(|l| (0..quads.len()).filter(|&p| quads[p].contains(&l)).collect()).collect())
}

fn klein(r: &mut Report) -> Result<()> {
    let k = klein_model()?;
    let arr = line_census(&k.lines)?;
    r.check("klein.t4", tv(&arr, 4));
    r.check("klein.t3", tv(&arr, 3));
    r.check("klein.t2", tv(&arr, 2));
    let want = BTreeMap::from([(3, 4), (4, 4)]);
    r.check("klein.per_line", per_curve_distribution(&arr).iter().filter(|d| **d == want).count());
    let quads = k.quad_points.iter().filter(|p| arr.find(p).is_some_and(|c| c.multiplicity() == 4)).count();
    let triples = k.triple_points.iter().filter(|p| arr.find(p).is_some_and(|c| c.multiplicity() == 3)).count();
    r.check("klein.tables", quads + triples);
    r.check("klein.pair_count", pair_count(&arr));
    r.check("klein.jacobian_degree", jacobian_degree(&arr));
    r.check("klein.real9_simplicial", is_simplicial(&k.select(&REAL9))?);
    let labels = k.generator_labels()?;
    r.check("klein.generators", labels.len());
    let conjugated: Vec<usize> = (0..labels.len()).filter(|&i| !k.generator_is_literal(i).unwrap_or(false)).map(|i| i + 1).collect();
    r.info("klein.generator_labels", format!("{labels:?}; read in the conjugate embedding: H{conjugated:?}"));
    Ok(())
}

fn kprime(r: &mut Report) -> Result<()> {
    let k = klein_model()?;
    let arr = line_census(&k.kprime_lines())?;
    r.check("kprime.t3", tv(&arr, 3));
    r.check("kprime.t2", tv(&arr, 2));
    r.check("kprime.jacobian_degree", jacobian_degree(&arr));
    r.check("kprime.per_line", per_curve_distribution(&arr).iter().filter(|d| d.get(&3) == Some(&3)).count());
    let s = kprime_structure(&k)?;
    r.check("kprime.type", census_type(&s));
    let printed = kprime_printed(&k.field)?;
    r.check("kprime.printed", printed.iter().filter(|p| arr.find(p).is_some_and(|c| c.multiplicity() == 3)).count());
    let p12 = kprime_point12(&k)?;
    let text: Vec<String> = p12.coords().iter().map(|c| c.to_text()).collect();
    r.info("kprime.point12", text.join(" : "));
    r.check("kprime.resolvable", resolvable(&s, 3).is_some());
    Ok(())
}

fn invariants(r: &mut Report) -> Result<()> {
    let inv = build_invariants()?;
    r.check("inv.phi6_closed_form", inv.phi6 == phi6_closed_form());
    r.check("inv.deg_phi14", inv.phi14.degree());
    r.check("inv.deg_phi21", inv.phi21.degree());
    r.check("inv.deg_phi42", inv.phi42.degree());
    let sol = verify_phi21_square_membership(&inv.phi4, &inv.phi6, &inv.phi14, &inv.phi21)?;
    let nonzero: Vec<String> = sol
        .iter()
        .filter(|(_, c)| !num_traits::Zero::is_zero(c))
        .map(|(e, c)| format!("{c}·Φ₄^{}Φ₆^{}Φ₁₄^{}", e[0], e[1], e[2]))
        .collect();
    r.check("inv.phi21_square_span", !nonzero.is_empty());
    r.info("inv.phi21_square", nonzero.join(" + "));
    Ok(())
}

fn numeric(r: &mut Report, opts: &Options) -> Result<()> {
    let inv = build_invariants()?;
    let p = numeric_pipeline(&inv, opts.digits)?;
    r.info("num.digits", p.digits);
    r.check("num.lines", p.lines.len());
    r.check("num.t4", p.line_census.t(4));
    r.check("num.t3", p.line_census.t(3));
    r.measure("num.steinerian", p.steinerian.max_residual);
    r.info("num.steinerian_alpha", format!("{:.6} {:+.1e}i", p.steinerian.alpha.0, p.steinerian.alpha.1));
    r.check("num.splits", p.splits.iter().filter(|s| s.nodes == 2).count());
    r.check("num.conic_t3", p.conic_census.t(3));
    r.check("num.conic_t2", p.conic_census.t(2));
    r.check("num.tangencies", p.conic_census.tangencies.len());
    r.check("num.pair_identity", 3 * p.conic_census.t(3) + p.conic_census.t(2));
    r.measure("num.phi42_product", p.phi42_deviation);
    Ok(())
}

fn roulleau(r: &mut Report) -> Result<()> {
    let k = klein_model()?;
    let hits = conic_search_exact(&k.triple_points, 8)?;
    r.check("roul.conics", hits.len());
    r.check("roul.per_conic", hits.iter().filter(|h| h.points.len() == 8).count());
    let s = IncidenceStructure::new(28, hits.iter().map(|h| h.points.clone()).collect())?;
    let degrees = s.point_degrees();
    r.check("roul.per_point", degrees.iter().filter(|&&d| d == 6).count());
    r.check("roul.type", census_type(&s));
    let conics: Vec<_> = hits.iter().map(|h| h.conic.clone()).collect();
    r.check("roul.transversal", transversality_check_exact(&conics));
    let n = hits.len();
    let pairs = 4 * n * n.saturating_sub(1) / 2;
    let at_points: usize = degrees.iter().map(|d| d * d.saturating_sub(1) / 2).sum();
    r.check("roul.t2", pairs.saturating_sub(at_points));
    r.info("roul.model", "search runs on the tabulated coordinates over ℚ(a); incidences are projectively invariant");
    Ok(())
}

fn plucker(r: &mut Report) -> Result<()> {
    let (a, b, c) = plucker_counts(4)?;
    r.check("plucker.d4", format!("({a}, {b}, {c})"));
    let (a, b, c) = plucker_counts(3)?;
    r.check("plucker.d3", format!("({a}, {b}, {c})"));
    Ok(())
}

fn generation(r: &mut Report) -> Result<()> {
    let k = klein_model()?;
    let l = GeometricLattice::from_arrangement(&line_census(&k.lines)?)?;
    let g = generation_number(&l);
    let four = g.tested.iter().find(|t| t.0 == 4).map(|t| format!("{} of {}", t.2, t.1)).unwrap_or_else(|| "not reached".into());
    r.check("gen.four_subsets", four);
    let h: Vec<usize> = k.generator_labels()?.iter().map(|x| x - 1).collect();
    r.check("gen.h_generates", generation_closure(&l, &h).generates);
    r.check("gen.g", g.g);
    r.info("gen.witness", format!("{:?}", g.witness.iter().map(|x| x + 1).collect::<Vec<_>>()));
    Ok(())
}

fn gr(r: &mut Report) -> Result<()> {
    let m = gr_model()?;
    let arr = m.census()?;
    r.check("gr.lines", m.lines.len());
    r.check("gr.t4", tv(&arr, 4));
    let split = arr
        .points_of_multiplicity(4)
        .iter()
        .filter(|c| {
            let mut h = [0usize; 3];
            for &l in &c.curves {
                h[GrModel::orbit(l)] += 1;
            }
            let mut v: Vec<usize> = h.into_iter().filter(|&x| x > 0).collect();
            v.sort_unstable();
            v == [2, 2]
        })
        .count();
    r.check("gr.quad_split", split);
    let d = gr_double_orbits(&m)?;
    r.check("gr.double_orbits", d.orbits.iter().map(|o| o.len().to_string()).collect::<Vec<_>>().join(", "));
    let mut sorted = d.r2.clone();
    sort_real(&mut sorted)?;
    let strict = sorted == d.r2 && d.r2.windows(2).all(|w| w[0] != w[1]);
    r.check("gr.radii_increasing", strict);
    r.info("gr.double_r2", d.r2.iter().map(|x| format!("{:.6}", x.to_f64())).collect::<Vec<_>>().join(" < "));
    let k = klein_model()?;
    let (ks, gs, is) = (klein_21_4(&k)?, gr_21_4(&m)?, igr_structure()?);
    let to_klein = isomorphic(&gs, &ks).filter(|w| w.verify(&gs, &ks));
    let labels = isomorphic(&is, &gs).filter(|w| w.verify(&is, &gs));
    r.check("gr.iso_klein", to_klein.is_some() && labels.is_some());
    if let Some(w) = to_klein {
        r.info("gr.iso_witness_lines", format!("{:?}", w.blocks.iter().map(|x| x + 1).collect::<Vec<_>>()));
    }
    Ok(())
}

fn derived(r: &mut Report) -> Result<()> {
    let m = gr_model()?;
    let k = klein_model()?;
    let k28 = klein_28_21(&k)?;
    for (tag, pair) in [("d12", (1, 2)), ("d23", (2, 3)), ("d13", (1, 3))] {
        let d = gr_d28(&m, pair)?;
        r.check(&format!("derived.{tag}.type"), d.signature());
        r.info(&format!("derived.{tag}.iso_klein_28_21"), isomorphic(&d.structure, &k28).is_some());
        let sum = incidence_sum_49(&d)?;
        r.check(&format!("derived.{tag}.sum49"), sum.config.signature());
        r.check(&format!("derived.{tag}.self_reciprocal"), sum.self_reciprocal);
        let radii: Vec<String> = sum.valid_radii.iter().map(|x| format!("{:.5}", x.to_f64())).collect();
        r.info(&format!("derived.{tag}.radius2"), format!("{:.6} (valid: {})", sum.circle.r2.to_f64(), radii.join(", ")));
    }
    let (choice, cfg) = half_orbit_42_config(&m)?;
    r.check("derived.half42", cfg.signature());
    r.info("derived.half42_choice", format!("{choice:?}"));
    let mid = gr_midcircles(&m)?;
    r.check("derived.midcircle", mid.all_equal);
    r.info("derived.midcircle_products", mid.products.iter().map(|x| format!("{x:.8}")).collect::<Vec<_>>().join(", "));
    let subs = subconfigs_14_2_7_4(&m)?;
    for s in &subs {
        r.check(&format!("derived.star.{}", s.name), format!("7/{}", s.star));
    }
    let by = |n: &str| subs.iter().find(|s| s.name == n).map(|s| &s.config.structure);
    if let (Some(s12), Some(s13), Some(s23)) = (by("S12"), by("S13"), by("S23")) {
        r.check("derived.S13_iso_S23", isomorphic(s13, s23).is_some());
        r.check("derived.S13_not_iso_S12", isomorphic(s13, s12).is_none());
    }
    Ok(())
}

fn orbit_kinds(fam: &ConicFamily, orbits: &[usize]) -> String {
    let e = orbits.iter().filter(|&&o| fam.orbits[o].kind() == "ellipses").count();
    let h = orbits.iter().filter(|&&o| fam.orbits[o].kind() == "hyperbolas").count();
    let other = orbits.len() - e - h;
    if other == 0 {
        format!("{e} ellipse + {h} hyperbola")
    } else {
        format!("{e} ellipse + {h} hyperbola + {other} other")
    }
}

fn catalog(r: &mut Report) -> Result<()> {
    let m = gr_model()?;
    let c = point_conic_configs(&m)?;
    r.check("cat.21_7", c.configs21.len());
    r.check("cat.21_7_resolvable", c.configs21.iter().filter(|x| x.resolution.is_some()).count());
    for x in &c.configs21 {
        r.info("cat.21_7_orbits", format!("{:?} resolvable: {}", x.orbits, x.resolution.is_some()));
    }
    let all28: Vec<usize> = (0..c.d28.orbits.len()).collect();
    r.check("cat.28_orbits", orbit_kinds(&c.d28, &all28));
    r.check("cat.28_two_fold", format!("{} of {}", c.config28.two_fold.len(), c.d28.orbits.len()));
    let del: Vec<String> = c.config28.deletions.iter().map(|(_, t)| t.to_string()).collect();
    let found = if !del.is_empty() && del.iter().all(|t| *t == del[0]) { format!("{} × {}", del.len(), del[0]) } else { del.join(", ") };
    r.check("cat.28_deletions", found);
    r.info("cat.28_excluded", format!("{} conics through more than 8 points left out", c.d28.excluded.len()));
    let c49 = &c.config49;
    let found = match c49.selections.first() {
        Some(sel) => format!("{} orbits: {}", sel.len(), orbit_kinds(&c.d49, sel)),
        None => format!("no balanced 7-orbit selection among {} orbits of {} conics", c.d49.orbits.len(), c.d49.conics.len()),
    };
    r.check("cat.49_orbits", found);
    r.info("cat.49_radius2", format!("{:.6}", c49.r2));
    let (fam13, c13) = catalog_49(&m, (1, 3))?;
    let kinds: Vec<String> = c13.selections.iter().map(|s| orbit_kinds(&fam13, s)).collect();
    r.info("cat.49_d13", format!("{} balanced selections: {}", c13.selections.len(), kinds.join("; ")));
    let sub = c49.sub_28_4_14_8.as_ref().map(|(_, s)| census_type(s).to_string()).unwrap_or_else(|| "none".into());
    r.check("cat.28_4_14_8", sub);
    r.check("cat.products", format!("{}, {}", 28u64.pow(4), 28u64.pow(2)));
    Ok(())
}

fn c64_lines(lines: &[klein_core::projplane::ProjectiveLine]) -> Vec<[Complex64; 3]> {
    lines.iter().map(|l| l.to_c64()).collect()
}

fn dim_text(t: &TangentReport) -> String {
    match (t.dimension, t.dimension_pinned) {
        (Some(a), Some(b)) if a == b => a.to_string(),
        (Some(a), Some(b)) => format!("inconsistent: {a} by gauge count, {b} pinned"),
        _ => format!("indeterminate (gap {:.1e})", t.gap),
    }
}

fn realize(r: &mut Report, opts: &Options) -> Result<()> {
    let k = klein_model()?;
    let s = kprime_structure(&k)?;
    let rep = realize_structure(&s, opts.seeds)?;
    r.measure("real.kprime", rep.best_residual);
    if let Some(c) = &rep.census {
        r.info("real.kprime_generic_census", format!("t3 = {}, t2 = {}, extra triples {:?}", c.t(3), c.t(2), rep.extra_triples));
    }
    let extra: Vec<Vec<usize>> =
        KPRIME_EXTRA_TRIPLES.iter().map(|t| t.iter().map(|l| KPRIME.iter().position(|x| x == l).expect("K′ label")).collect()).collect();
    let aug = realize_augmented(&s, &extra, opts.seeds)?;
    let found = match (&aug.realization, aug.success) {
        (Some(real), true) => {
            let c = line_census_f64(&real.lines, 1e-8);
            let triples: Vec<&Vec<usize>> = c.points.iter().filter(|p| p.len() >= 3).collect();
            let blocks = (0..real.lines.len()).map(|l| (0..triples.len()).filter(|&p| triples[p].contains(&l)).collect()).collect();
            let labels: Vec<Vec<usize>> = aug.extra_triples.iter().map(|t| t.iter().map(|&i| KPRIME[i]).collect()).collect();
            r.info("real.kprime_extra_triples", format!("{labels:?}, residual {:.1e}", aug.best_residual));
            r.info("real.triple_count", format!("{} triple points (12 real lines have at most 19)", triples.len()));
            census_type(&IncidenceStructure::new(triples.len(), blocks)?).to_string()
        }
        _ => format!("no realization (residual {:.1e})", aug.best_residual),
    };
    r.check("real.kprime_extra", found);
    let fano = IncidenceStructure::new(
        7,
        vec![vec![0, 1, 2], vec![0, 3, 4], vec![0, 5, 6], vec![1, 3, 5], vec![1, 4, 6], vec![2, 3, 6], vec![2, 4, 5]],
    )?;
    let f = realize_structure(&fano, opts.seeds)?;
    r.check("real.fano", if f.success { "realized" } else { "no realization" });
    r.info("real.fano_residual", format!("{:.3e}", f.best_residual));
    let tri = IncidenceStructure::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]])?;
    r.check("real.triangle", if realize_structure(&tri, 4)?.success { "realized" } else { "no realization" });

    let m = gr_model()?;
    let (is, gs) = (igr_structure()?, gr_21_4(&m)?);
    let w = isomorphic(&is, &gs).ok_or_else(|| klein_core::Error::SelfCheck("I_GR does not match GR".into()))?;
    let conc: Vec<Vec<usize>> = I_GR.iter().map(|q| q.iter().map(|&l| w.blocks[l - 1]).collect()).collect();
    let t = tangent_dimension(&c64_lines(&m.lines), &conc)?;
    r.check("real.gr_tangent", dim_text(&t));
    r.info("real.gr_tangent_rank", format!("rank {} of {} unknowns, gap {:.1e}", t.rank, t.unknowns, t.gap));
    let mut kc = k.quad_lines.clone();
    kc.extend(k.triple_lines.iter().cloned());
    let t = tangent_dimension(&c64_lines(&k.lines), &kc)?;
    r.check("real.klein_rigid", dim_text(&t));
    let generic: Vec<[Complex64; 3]> = [[1.0, 2.0, 3.0], [-1.0, 0.5, 2.0], [0.3, -2.0, 1.0], [2.0, 1.0, -1.5]]
        .iter()
        .map(|v: &[f64; 3]| v.map(|x| Complex64::new(x, 0.0)))
        .collect();
    r.check("real.generic4", dim_text(&tangent_dimension(&generic, &[])?));
    Ok(())
}

fn conjecture(r: &mut Report, opts: &Options) -> Result<()> {
    let m = gr_model()?;
    let sweep = conjecture_sweep(&m, None, None, opts.steps, opts.samples + 1)?;
    r.info("conj.label", sweep.label);
    let s0 = &sweep.samples[0];
    r.measure("conj.symmetry", s0.symmetry_defect.max(s0.identification).max(s0.c3_residual));
    let perturbed: Vec<_> = sweep.samples.iter().filter(|s| s.seed > 0).collect();
    let reached = perturbed.iter().filter(|s| s.converged && s.c3_residual < 1e-8).count();
    let flagged = perturbed.iter().filter(|s| s.diverged.is_some()).count();
    r.check("conj.samples", perturbed.len() >= 5 && reached + flagged == perturbed.len());
    r.info("conj.sample_counts", format!("{} perturbed: {reached} reached c3 < 1e-8, {flagged} flagged divergent", perturbed.len()));
    let worst = perturbed.iter().map(|s| s.c3_residual).fold(0.0, f64::max);
    r.info("conj.worst_c3", format!("{worst:.3e}"));
    r.measure("conj.broken", sweep.samples.iter().map(|s| s.broken_identification).fold(f64::INFINITY, f64::min));
    let frame = sweep_frame(&m)?;
    let same = sweep.samples.iter().all(|s| {
        let (a, b, c, d, e) = evaluate_sample(&frame, &s.c1, &s.theta, None);
        (a, b, c, d, e) == (s.c2_residual, s.identification, s.c3_residual, s.broken_identification, s.symmetry_defect)
    });
    r.check("conj.reproducible", same);
    Ok(())
}
