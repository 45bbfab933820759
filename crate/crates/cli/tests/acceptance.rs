//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Knot and cover checks drive the `twalex` binary on JSON jobs; the chain
//! and property checks share their oracles with the core test suite.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode, Stdio};

use common::{chain, props};
use serde_json::{json, Value};
use twalex_core::scalars::parse::{parse_laurent, parse_ratfunc};
use twalex_core::scalars::{CycloNum, LaurentPoly, Monomial, RatFunc};
use twalex_core::torsion::{equal_up_to_unit, TorsionValue, UnitGroup};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn twalex(args: &[&str], job: &Value) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_twalex"))
        .args(["--input", "-"])
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn twalex");
    child.stdin.take().unwrap().write_all(job.to_string().as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn twalex_json(command: &str, job: &Value) -> (i32, Value) {
    let r = twalex(&["--json", "--command", command], job);
    let v = serde_json::from_str(&r.stdout)
        .unwrap_or_else(|e| panic!("bad json from {command}: {e}\n{}{}", r.stdout, r.stderr));
    (r.code, v)
}

fn braid(strands: usize, word: &[i64]) -> Value {
    json!({ "braid": { "strands": strands, "word": word } })
}

fn t_pow(e: i64) -> LaurentPoly {
    LaurentPoly::monomial(Monomial::new(vec![e]))
}

fn torus_delta(q: i64) -> LaurentPoly {
    let one = LaurentPoly::from_int(1);
    let num = (t_pow(2 * q) - one.clone()) * (t_pow(1) - one.clone());
    let den = (t_pow(2) - one.clone()) * (t_pow(q) - one);
    num.div_exact(&den).expect("closed form divides exactly")
}

fn ac1() {
    let f = common::field(1);
    for q in [3, 5, 7] {
        let (code, v) = twalex_json("compute", &braid(2, &vec![1; q as usize]));
        assert_eq!(code, 0, "T(2,{q}): {v}");
        let got = TorsionValue::new(
            parse_ratfunc(v["torsion"].as_str().unwrap(), Some(&f), 1).unwrap(),
            UnitGroup::new(1, twalex_core::scalars::Lattice::full(1)),
        )
        .unwrap();
        let want = TorsionValue::new(
            RatFunc::new(torus_delta(q), t_pow(1) - LaurentPoly::from_int(1)).unwrap(),
            got.units.clone(),
        )
        .unwrap();
        assert!(
            equal_up_to_unit(&got, &want).unwrap().is_some(),
            "T(2,{q}): got {}",
            v["torsion"]
        );
    }
}

struct Instance {
    name: String,
    job: Value,
    /// Row of pi_bar when G is cyclic of this order.
    cyclic: Option<u64>,
}

fn instances() -> Vec<Instance> {
    let sources = [
        ("unknot", braid(1, &[])),
        ("trefoil", braid(2, &[1, 1, 1])),
        ("figure-eight", braid(3, &[1, -2, 1, -2])),
        ("hopf", braid(2, &[1, 1])),
    ];
    let zeta = |gens: usize| {
        json!({ "conductor": 3, "images": vec![vec![vec!["z"]]; gens] })
    };
    let sl2 = json!({ "images": [[["1", "1"], ["0", "1"]], [["1", "0"], ["-1", "1"]]] });
    let mut out = Vec::new();
    for (name, src) in &sources {
        let gens = src["braid"]["strands"].as_u64().unwrap() as usize;
        let mut reps = vec![("trivial", None), ("zeta_3", Some(zeta(gens)))];
        if *name == "trefoil" {
            reps.push(("braid rep", Some(sl2.clone())));
        }
        let mut groups: Vec<(Vec<u64>, Option<u64>)> = vec![(vec![2], Some(2)), (vec![3], Some(3)), (vec![4], Some(4))];
        if *name == "hopf" {
            groups.push((vec![2, 2], None));
        }
        for (orders, cyclic) in &groups {
            for (rname, rho) in &reps {
                let mut job = src.clone();
                job["cover"] = json!({ "orders": orders });
                if let Some(rho) = rho {
                    job["rho"] = rho.clone();
                }
                out.push(Instance {
                    name: format!("{name} {orders:?} {rname}"),
                    job,
                    cyclic: *cyclic,
                });
            }
        }
    }
    out
}

fn ac2() {
    let all = instances();
    assert_eq!(all.len(), 29);
    for inst in &all {
        let (code, v) = twalex_json("verify-cover", &inst.job);
        assert_eq!(code, 0, "{}: {v}", inst.name);
        assert_eq!(v["equal"], true, "{}", inst.name);
        assert!(v["lhs"]["torsion"].is_string(), "{}: lhs missing", inst.name);
    }
}

/// Exponents of every monomial in `p`, relative to its first term.
fn exponent_offsets(p: &LaurentPoly, n: usize) -> Vec<Vec<i64>> {
    let base = p.terms().next().map(|(m, _)| m.padded(n)).unwrap_or(vec![0; n]);
    p.terms()
        .map(|(m, _)| m.padded(n).iter().zip(&base).map(|(a, b)| a - b).collect())
        .collect()
}

fn ac3() {
    let f = common::field(12);
    for inst in instances() {
        let Some(q) = inst.cyclic else { continue };
        let (code, v) = twalex_json("verify-cover", &inst.job);
        assert_eq!(code, 0, "{}", inst.name);
        assert_eq!(v["sublattice_ok"], true, "{}", inst.name);
        // pi_bar is the all-ones row, so exponents must differ by q Z in the sum
        let n = if inst.name.starts_with("hopf") { 2 } else { 1 };
        for part in ["num", "den"] {
            let text = v["lhs"][part].as_str().unwrap();
            let p = parse_laurent(text, Some(&f), n).unwrap();
            for d in exponent_offsets(&p, n) {
                let s: i64 = d.iter().sum();
                assert_eq!(s.rem_euclid(q as i64), 0, "{}: {part} = {text}", inst.name);
            }
        }
    }
}

/// `prod_k Delta(zeta_q^k)` for `k = 1..q-1`, evaluated exactly.
fn norm_at_roots(delta: &LaurentPoly, q: u64) -> CycloNum {
    let f = common::field(q);
    let mut prod = CycloNum::from_int(1).with_field(&f);
    for k in 1..q as i64 {
        let mut s = CycloNum::from_int(0).with_field(&f);
        for (m, c) in delta.terms() {
            s = s + CycloNum::zeta_pow(&f, m.exp(0) * k).scale(&c.as_rational().unwrap());
        }
        prod = prod * s;
    }
    prod
}

fn ac4() {
    let trefoil = braid(2, &[1, 1, 1]);
    let mut job = trefoil.clone();
    job["q"] = json!(2);
    let r = twalex(&["--command", "branched"], &job);
    assert_eq!((r.code, r.stdout.trim()), (0, "t^4 + t^2 + 1"), "{}", r.stderr);

    let (_, v) = twalex_json("compute", &trefoil);
    let delta = parse_laurent(v["num"].as_str().unwrap(), None, 1).unwrap();
    for (q, want) in [(2u64, "3"), (3, "4")] {
        job["q"] = json!(q);
        let r = twalex(&["--command", "homology-order"], &job);
        assert_eq!((r.code, r.stdout.trim()), (0, want), "q = {q}: {}", r.stderr);
        let oracle = norm_at_roots(&delta, q).as_rational().unwrap();
        assert_eq!(oracle.to_string().trim_start_matches('-'), want, "oracle at q = {q}");
    }
}

fn ac5() {
    assert_eq!(chain::run(0xace5, 200, true), 0);
    assert!(chain::run(0x51a7, 100, false) > 0, "sign factor never odd");
}

fn ac6() {
    props::fox_on_random_words(0xf0c5, 500);
    props::wada_column_independence();
    props::conjugation_invariance();
    props::direct_sum_squares_scalar_torsion();
    props::character_orthogonality();
    props::smith_on_random_matrices(0x5eed, 500);
    props::determinant_oracles(0xde7, 60);
}

fn ac7() {
    // phi sees only c, so every Fox minor containing the a, b columns dies
    let job = json!({
        "presentation": { "generators": ["a", "b", "c"], "relators": ["a b A B", "a c A C"] },
        "phi": { "a": [0], "b": [0], "c": [1] },
        "cover": { "orders": [2] },
    });
    let r = twalex(&["--command", "verify-cover"], &job);
    assert_eq!(r.code, 3, "{}", r.stderr);
    assert!(r.stderr.contains("character xi = (0)"), "{}", r.stderr);

    let mut det2 = braid(2, &[1, 1, 1]);
    det2["rho"] = json!({ "images": [[["2", "0"], ["0", "1"]], [["2", "0"], ["0", "1"]]] });
    let r = twalex(&[], &det2);
    assert_eq!(r.code, 2, "{}", r.stderr);
    assert!(r.stderr.contains("determinant"), "{}", r.stderr);
}

fn message(e: &(dyn std::any::Any + Send)) -> String {
    e.downcast_ref::<String>()
        .cloned()
        .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_else(|| "panic".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, &str, fn()); 7] = [
        ("AC1", "torus knots T(2,3), T(2,5), T(2,7) match the closed form", ac1),
        ("AC2", "cover formula holds on the 29-instance matrix", ac2),
        ("AC3", "cyclic-cover torsions live in the q-sublattice", ac3),
        ("AC4", "branched covers of the trefoil and homology orders", ac4),
        ("AC5", "chain torsion agrees with the brute-force oracle", ac5),
        ("AC6", "property suites", ac6),
        ("AC7", "negative paths exit 3 and 2", ac7),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (id, desc, check) in criteria {
        let start = std::time::Instant::now();
        match catch_unwind(AssertUnwindSafe(check)) {
            Ok(()) => println!("{id} PASS - {desc} ({:.2}s)", start.elapsed().as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("{id} FAIL - {desc}: {}", message(&*e));
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
