//! Runs the full acceptance suite and prints one line per criterion.

use aqar_core::selftest::{run_selftest, Outcome, Scale};
use aqar_core::Config;

fn main() {
    let report = run_selftest(Scale::Full, &Config::default(), 0);
    for c in &report.criteria {
        let (pass, fail, skip) = c.counts();
        let tag = match c.outcome {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Skip => "SKIP",
        };
        println!(
            "{tag} {:<24} {} ({pass} passed, {fail} failed, {skip} skipped, {:.1}s)",
            c.id,
            c.title,
            c.elapsed.as_secs_f64()
        );
        for item in c.items.iter().filter(|i| i.outcome == Outcome::Fail) {
            println!("     failed {}: {}", item.id, item.detail);
        }
        for claim in c.claims.iter().filter(|k| k.known_discrepancy && k.witness.is_some()) {
            println!("     known discrepancy {}: {}", claim.claim_id, claim.witness.as_deref().unwrap_or(""));
        }
    }
    if !report.all_passed() {
        std::process::exit(1);
    }
}
