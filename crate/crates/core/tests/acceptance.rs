//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (visible with `cargo test --test acceptance -- --nocapture`). Every check
//! is an exact rational identity; there are no tolerances anywhere.

use vexf_core::audits::*;

fn report_line(criterion: &str, report: &SuiteReport) -> bool {
    let ok = report.passed();
    println!(
        "ACCEPTANCE {criterion}: {} [{}]",
        if ok { "PASS" } else { "FAIL" },
        report.summary()
    );
    for failure in report.failures() {
        println!("  failed case {}: {}", failure.id, failure.detail);
    }
    ok
}

#[test]
fn criterion_1_monotone_split() {
    // 200 seeded random rank-2 networks (d <= 4, s <= 6, integer weights in
    // [-3, 3]): monotone g, h of the same size with f = g - h exactly on all
    // sample points.
    let report = split_suite(200, 0xC1, 100);
    assert!(report_line("1 monotone-split", &report));
}

#[test]
fn criterion_2_epigraph_formulation() {
    // 100 seeded monotone networks: exactly sum-of-ranks inequalities, and
    // min{t : (x, t, y) feasible} equals the network value exactly at every
    // sampled x.
    let report = epigraph_suite(100, 0xC2, 100);
    assert!(report_line("2 epigraph-ef", &report));
}

#[test]
fn criterion_3_certificate_pipeline() {
    // 50 seeded V-polytopes (d <= 3, <= 5 vertices) plus cube(2),
    // cross_polytope(2), permutahedron(3): EF sizes within 4s and
    // P + Newt(h) = Newt(g) exactly.
    let report = certificate_suite(50, 0xC3, 10);
    assert_eq!(report.cases.len(), 53);
    assert!(report_line("3 virtual-ef-certificate", &report));
}

#[test]
fn criterion_4_virtual_optimization() {
    // 100 seeded pairs (P, Q) with R = P + Q (d <= 3); per pair a generic, a
    // tie-inducing (orthogonal to a sampled edge of R), and an axis
    // objective: the returned point lies in P and attains the support value.
    let report = virtual_optimize_suite(100, 0xC4);
    assert!(report_line("4 virtual-optimize", &report));
}

#[test]
fn criterion_5_face_and_lex_additivity() {
    // Face additivity of Minkowski sums and lexicographic singleton
    // additivity x_P + x_Q = x_R on 100 seeded triples, including degenerate
    // directions.
    let faces = face_additivity_suite(100, 0xC5);
    let ok_faces = report_line("5a face-additivity", &faces);
    let lex = lex_additivity_suite(100, 0xC5);
    let ok_lex = report_line("5b lex-additivity", &lex);
    assert!(ok_faces && ok_lex);
}

#[test]
fn criterion_6_sorting_network_formulations() {
    // Batcher formulations of the permutahedron: 10 inequalities for n = 4
    // and 38 for n = 8, both strictly below 2^n - 2, certified equal to the
    // permutahedron by per-vertex lifting LPs plus support equality on all
    // facet normals.
    let four = sorting_ef_suite(4);
    let ok4 = report_line("6a sorting-ef n=4", &four);
    let eight = sorting_ef_suite(8);
    let ok8 = report_line("6b sorting-ef n=8", &eight);
    assert!(ok4 && ok8);
}

#[test]
fn criterion_7_hypersimplex_summands() {
    // For n in {3, 4, 5} and every k: eroding the permutahedron by the
    // hypersimplex and re-adding recovers the permutahedron exactly.
    let report = summand_suite(5);
    assert_eq!(report.cases.len(), 2 + 3 + 4);
    assert!(report_line("7 summand-erosion", &report));
}

#[test]
fn criterion_8_monotone_completion() {
    // Size bookkeeping size(Q_ef) = size(P_ef) + 2|E|, containment of P, and
    // downward closure on 100 sampled points per instance.
    let report = completion_suite(0xC8, 100);
    assert!(report_line("8 monotone-completion", &report));
}

#[test]
fn criterion_9_out_of_scope_statement() {
    // The exponential lower bounds (matching, TSP, matroids, and the
    // inapproximability transfer) are existence results; no computation at
    // desk scale reproduces them. They are covered here only structurally:
    // criterion 6 exhibits a formulation exponentially smaller than the facet
    // count, and criterion 7 demonstrates matroid-polytope summands of the
    // permutahedron. Nothing further is claimed or tested.
    println!("ACCEPTANCE 9 out-of-scope-statement: PASS [lower bounds covered structurally by 6-7]");
}
