//! Expected values for every check, with the claim each one stands for.

#[derive(Clone, Copy, Debug)]
pub enum Expect {
    Equals(&'static str),
    Below(f64),
    Above(f64),
}

#[derive(Clone, Copy, Debug)]
pub struct Golden {
    pub key: &'static str,
    pub expect: Expect,
    pub claim: &'static str,
}

use Expect::*;

const fn g(key: &'static str, expect: Expect, claim: &'static str) -> Golden {
    Golden { key, expect, claim }
}

pub const GOLDEN: &[Golden] = &[
    // Klein arrangement.
    g("klein.t4", Equals("21"), "the 21 Klein lines meet in 21 quadruple points"),
    g("klein.t3", Equals("28"), "the 21 Klein lines meet in 28 triple points"),
    g("klein.t2", Equals("0"), "there are no double points"),
    g("klein.per_line", Equals("21"), "each line carries 4 quadruple and 4 triple points"),
    g("klein.tables", Equals("49"), "census points equal the tabulated 49 points up to scale"),
    g("klein.pair_count", Equals("210"), "6·t4 + 3·t3 = C(21,2)"),
    g("klein.jacobian_degree", Equals("301"), "Σ (mult − 1)² = 21·9 + 28·4"),
    g("klein.real9_simplicial", Equals("true"), "the nine real-coefficient lines form a simplicial arrangement"),
    g("klein.generators", Equals("5"), "the five tabulated generators are Klein lines"),
    // K′.
    g("kprime.t3", Equals("12"), "K′ has 12 triple points"),
    g("kprime.t2", Equals("30"), "K′ has 30 double points"),
    g("kprime.jacobian_degree", Equals("78"), "Σ (mult − 1)² = 78 for K′"),
    g("kprime.per_line", Equals("12"), "every K′ line has exactly 3 triple points"),
    g("kprime.type", Equals("(12_3)"), "K′ triple points and lines form (12₃)"),
    g("kprime.printed", Equals("11"), "the 11 well-formed tabulated triple points are census points"),
    g("kprime.resolvable", Equals("true"), "K′(12₃) is resolvable"),
    // Invariants.
    g("inv.phi6_closed_form", Equals("true"), "Φ₆ = −det Hess(Φ₄)/54 has the closed form"),
    g("inv.deg_phi14", Equals("14"), "deg Φ₁₄ = 14"),
    g("inv.deg_phi21", Equals("21"), "deg Φ₂₁ = 21"),
    g("inv.deg_phi42", Equals("42"), "Φ₂₁ divides Φ₂₁∘∇Φ₄ with quotient of degree 42"),
    g("inv.phi21_square_span", Equals("true"), "Φ₂₁² is a combination of the nine degree-42 monomials in Φ₄, Φ₆, Φ₁₄"),
    // Numeric pipeline.
    g("num.lines", Equals("21"), "Φ₂₁ splits into 21 lines"),
    g("num.t4", Equals("21"), "numeric census has 21 quadruple points"),
    g("num.t3", Equals("28"), "numeric census has 28 triple points"),
    g("num.steinerian", Below(1e-40), "4Φ₄³ + Φ₆² vanishes at the quadruple points"),
    g("num.splits", Equals("21"), "every quadruple-point polar is a line times a conic"),
    g("num.conic_t3", Equals("224"), "the 21 polar conics have 224 triple points"),
    g("num.conic_t2", Equals("168"), "the 21 polar conics have 168 double points"),
    g("num.tangencies", Equals("0"), "all conic intersections are transversal"),
    g("num.pair_identity", Equals("840"), "3·224 + 168 = 4·C(21,2)"),
    g("num.phi42_product", Below(1e-30), "Φ₄₂ is proportional to the product of the 21 conics"),
    // Roulleau conics.
    g("roul.conics", Equals("21"), "21 conics pass through 8 of the 28 triple points"),
    g("roul.per_conic", Equals("21"), "each conic contains exactly 8 points"),
    g("roul.per_point", Equals("28"), "each point lies on exactly 6 conics"),
    g("roul.type", Equals("(28_6, 21_8)"), "the conics form a (28₆, 21₈) configuration"),
    g("roul.transversal", Equals("true"), "all pairs of conics meet transversally"),
    g("roul.t2", Equals("420"), "840 = t₂ + 15·28"),
    // Plücker.
    g("plucker.d4", Equals("(12, 28, 24)"), "a smooth quartic has dual degree 12, 28 nodes, 24 cusps"),
    g("plucker.d3", Equals("(6, 0, 9)"), "a smooth cubic has dual degree 6 and 9 cusps"),
    // Generation.
    g("gen.four_subsets", Equals("0 of 5985"), "no four Klein lines generate the lattice"),
    g("gen.h_generates", Equals("true"), "the five tabulated generators generate all 21 lines"),
    g("gen.g", Equals("5"), "g(L) = 5"),
    // GR model.
    g("gr.lines", Equals("21"), "GR has 21 lines"),
    g("gr.t4", Equals("21"), "GR has 21 quadruple points"),
    g("gr.quad_split", Equals("21"), "each quadruple point has 2 + 2 lines from two orbits"),
    g("gr.double_orbits", Equals("14, 14, 14"), "cross-orbit double points form three orbits of 14"),
    g("gr.radii_increasing", Equals("true"), "the three double orbits have distinct radii"),
    g("gr.iso_klein", Equals("true"), "GR(21₄) ≅ K(21₄) with a verified witness"),
    // Derived configurations.
    g("derived.d12.type", Equals("(28_3, 21_4)"), "d12 doubles with collinear quadruples form (28₃, 21₄)"),
    g("derived.d23.type", Equals("(28_3, 21_4)"), "d23 doubles with collinear quadruples form (28₃, 21₄)"),
    g("derived.d13.type", Equals("(28_3, 21_4)"), "d13 doubles with collinear quadruples form (28₃, 21₄)"),
    g("derived.d12.sum49", Equals("(49_4)"), "the incidence sum on d12 is (49₄)"),
    g("derived.d23.sum49", Equals("(49_4)"), "the incidence sum on d23 is (49₄)"),
    g("derived.d13.sum49", Equals("(49_4)"), "the incidence sum on d13 is (49₄)"),
    g("derived.d12.self_reciprocal", Equals("true"), "the d12 (49₄) is its own reciprocal"),
    g("derived.d23.self_reciprocal", Equals("true"), "the d23 (49₄) is its own reciprocal"),
    g("derived.d13.self_reciprocal", Equals("true"), "the d13 (49₄) is its own reciprocal"),
    g("derived.half42", Equals("(42_4, 28_6)"), "a halving of the double orbits gives (42₄, 28₆)"),
    g("derived.midcircle", Equals("true"), "R²ρ² is the same for the three orbit pairs"),
    g("derived.star.S12", Equals("7/2"), "S₁₂ traces a {7/2} star"),
    g("derived.star.S13", Equals("7/3"), "S₁₃ traces a {7/3} star"),
    g("derived.star.S23", Equals("7/3"), "S₂₃ traces a {7/3} star"),
    g("derived.S13_iso_S23", Equals("true"), "S₁₃ ≅ S₂₃"),
    g("derived.S13_not_iso_S12", Equals("true"), "S₁₃ is not isomorphic to S₁₂"),
    // Point-conic catalog.
    g("cat.21_7", Equals("2"), "two (21₇) configurations on the quadruple points"),
    g("cat.21_7_resolvable", Equals("1"), "exactly one (21₇) is resolvable into 7 classes"),
    g("cat.28_orbits", Equals("3 ellipse + 1 hyperbola"), "(28₈) has three ellipse orbits and one hyperbola orbit"),
    g("cat.28_two_fold", Equals("4 of 4"), "each orbit of (28₈) is a (28₂, 7₈) piece"),
    g("cat.28_deletions", Equals("4 × (28_6, 21_8)"), "deleting one orbit gives (28₆, 21₈), four ways"),
    g("cat.49_orbits", Equals("7 orbits: 4 ellipse + 3 hyperbola"), "(49₈) on d12 uses 4 ellipse and 3 hyperbola orbits"),
    g("cat.28_4_14_8", Equals("(28_4, 14_8)"), "a (28₄, 14₈) subconfiguration exists"),
    g("cat.products", Equals("614656, 784"), "28⁴ and 28² points in the product configurations"),
    // Realization probes.
    g("real.kprime", Below(1e-10), "K′(12₃) realizes over ℝ"),
    g("real.kprime_extra", Equals("(16_3, 12_4)"), "the four extra triples upgrade the realization to (16₃, 12₄)"),
    g("real.fano", Equals("no realization"), "the Fano plane is not realizable over ℝ"),
    g("real.triangle", Equals("realized"), "a triangle realizes"),
    g("real.gr_tangent", Equals("3"), "the GR realization space has local dimension 3"),
    g("real.klein_rigid", Equals("0"), "the Klein arrangement is rigid over ℂ"),
    g("real.generic4", Equals("0"), "four generic lines have no moduli"),
    // Conjecture sweep.
    g("conj.symmetry", Below(1e-12), "unperturbed inputs reproduce D₇ symmetry"),
    g("conj.samples", Equals("true"), "at least 5 perturbed samples reach a third-conic residual below 1e-8 or are flagged"),
    g("conj.broken", Above(1e-2), "breaking an identification gives an O(1) residual"),
    g("conj.reproducible", Equals("true"), "residuals recompute from stored sample parameters"),
];

pub fn golden(key: &str) -> &'static Golden {
    GOLDEN.iter().find(|g| g.key == key).unwrap_or_else(|| panic!("no golden value for {key}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn keys_are_unique() {
        let mut seen = HashSet::new();
        for g in GOLDEN {
            assert!(seen.insert(g.key), "duplicate key {}", g.key);
        }
    }
}
