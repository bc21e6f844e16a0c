//! One test per acceptance criterion. Run with
//! `cargo test --release --test acceptance -- --nocapture --test-threads=1`
//! to see one verdict line per criterion.

use qtangle::verify::{run_criterion, VerifyOptions};

fn criterion(id: u32) {
    let outcome = run_criterion(id, &VerifyOptions::default()).expect("criterion evaluates");
    println!("{}", outcome.summary_line());
    for c in outcome.failures() {
        println!(
            "    {}: expected {:?}, computed {}, tolerance {} ({:?})",
            c.claim, c.expected, c.computed, c.tolerance, c.comparison
        );
    }
    assert!(outcome.pass(), "{}", outcome.summary_line());
}

#[test]
fn criterion_01() {
    criterion(1);
}

#[test]
fn criterion_02() {
    criterion(2);
}

#[test]
fn criterion_03() {
    criterion(3);
}

#[test]
fn criterion_04() {
    criterion(4);
}

#[test]
fn criterion_05() {
    criterion(5);
}

#[test]
fn criterion_06() {
    criterion(6);
}

#[test]
fn criterion_07() {
    criterion(7);
}

#[test]
fn criterion_08() {
    criterion(8);
}

#[test]
fn criterion_09() {
    criterion(9);
}

#[test]
fn criterion_10() {
    criterion(10);
}

#[test]
fn verdicts_do_not_depend_on_the_seed() {
    for id in [2, 4, 5, 8] {
        let a = run_criterion(id, &VerifyOptions { seed: 42, ..Default::default() }).unwrap();
        let b = run_criterion(id, &VerifyOptions { seed: 43, ..Default::default() }).unwrap();
        println!("criterion {id}: seed 42 pass={}, seed 43 pass={}", a.pass(), b.pass());
        assert_eq!(a.pass(), b.pass());
    }
}
