//! Sum a geometric series, shuffle it onto a longer well-ordering, and check
//! that the sum survives the trip.

use ordsum::{
    canonical_enumeration, make_family, parse, perturb, sum_series, verify_invariance,
    EvalBudget, FamilySpec, SumOutcome,
};

fn main() {
    let series = make_family(FamilySpec::Geometric { ratio: 0.5 }).unwrap();
    let budget = EvalBudget::default();

    match sum_series(&series, &budget) {
        SumOutcome::Converged { sum, err, .. } => println!("plain sum: {sum:?} ± {err:e}"),
        other => panic!("geometric series should converge: {other:?}"),
    }

    // Lay the same terms out over w^2*3+w+5, with a seeded local shuffle on top.
    let target = parse("w^2*3+w+5").unwrap();
    let shuffled = perturb(&canonical_enumeration(&target).unwrap(), 7, 64);

    let report = verify_invariance(&series, &shuffled, &budget).unwrap();
    println!("{}", report.render());
}
