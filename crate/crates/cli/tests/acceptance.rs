//! Acceptance suite, criterion 11: the expression parser round-trips a
//! large fuzzed corpus, the documented error classes map to exit codes
//! 2/3/4, JSON output is well-formed and agrees with text output, and
//! identical invocations are byte-identical.

use std::path::PathBuf;
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cobord_cli::expr::{parse_manifold, Atom, Expr, Term};

fn report(ok: bool) {
    println!(
        "criterion 11 (parser and exit codes): {}",
        if ok { "pass" } else { "FAIL" }
    );
    assert!(ok, "criterion 11 failed");
}

fn random_atom(rng: &mut ChaCha8Rng, depth: u32) -> Atom {
    let roll = if depth == 0 {
        rng.gen_range(0..4)
    } else {
        rng.gen_range(0..5)
    };
    match roll {
        0 => Atom::RP(rng.gen_range(0..=9)),
        1 => Atom::CP(rng.gen_range(0..=9)),
        2 => Atom::Dold(rng.gen_range(0..=9), rng.gen_range(0..=9)),
        3 => Atom::S(rng.gen_range(1..=9)),
        _ => Atom::Paren(Box::new(random_expr(rng, depth - 1))),
    }
}

fn random_expr(rng: &mut ChaCha8Rng, depth: u32) -> Expr {
    let terms = (0..rng.gen_range(1..=3))
        .map(|_| Term {
            atoms: (0..rng.gen_range(1..=3))
                .map(|_| random_atom(rng, depth))
                .collect(),
        })
        .collect();
    Expr { terms }
}

#[test]
fn acceptance_11_parser_and_exit_codes() {
    // --- 10^4 fuzzed round trips, nesting depth <= 5 ---------------------
    let mut rng = ChaCha8Rng::seed_from_u64(0x0b0e_d15c);
    let mut round_trip_ok = true;
    for case in 0..10_000u32 {
        let ast = random_expr(&mut rng, 4); // atoms add one level: depth <= 5
        let printed = ast.to_string();
        match parse_manifold(&printed) {
            Ok(back) if back == ast => {}
            other => {
                eprintln!("round trip {case} failed on `{printed}`: {other:?}");
                round_trip_ok = false;
                break;
            }
        }
    }

    // --- exit codes 2 / 3 / 4 on the documented error classes ------------
    let parse_errors = [
        run(&["sw", "Dold(1,2"]),
        run(&["sw", "QP(2)"]),
        run(&["sw", "RP(1,2)"]),
        run(&["adem", "Sq^0"]),
        run(&["adem", "Sq^-1"]),
    ];
    let exit2_ok = parse_errors.iter().all(|o| code(o) == 2 && o.stdout.is_empty());

    let semantic_errors = [
        run(&["sw", "RP(2) + RP(3)"]),
        run(&["cobordant", "RP(2)", "RP(3)"]),
        run(&["classify", "RP(2)*RP(2)*RP(2)*RP(2)*RP(2)"]),
        run(&["omega", "400"]),
        run(&["sw", "S(0)"]),
    ];
    let exit3_ok = semantic_errors.iter().all(|o| code(o) == 3 && o.stdout.is_empty());

    let exit4_ok = poisoned_cache_hits_exit_4();

    // usage errors (unknown subcommand) are also on the parse/usage channel
    let usage = run(&["frobnicate"]);
    let usage_ok = code(&usage) == 2;

    // --- JSON and text agree; JSON validates against the fixed shapes ----
    let json_ok = json_text_agreement();

    // --- byte-identical reruns -------------------------------------------
    let a = run(&["numbers", "RP(4)"]);
    let b = run(&["numbers", "RP(4)"]);
    let c = run(&["--json", "classify", "CP(2)"]);
    let d = run(&["--json", "classify", "CP(2)"]);
    let deterministic = a.stdout == b.stdout && c.stdout == d.stdout;

    println!(
        "  round-trips: 10000; exit codes 2/3/4: {}/{}/{}; deterministic: {deterministic}",
        exit2_ok, exit3_ok, exit4_ok
    );
    report(round_trip_ok && exit2_ok && exit3_ok && exit4_ok && usage_ok && json_ok && deterministic);
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cobord"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

fn stdout_str(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

fn json_of(output: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout_str(output)).expect("stdout is one JSON object")
}

fn poisoned_cache_hits_exit_4() -> bool {
    let dir = std::env::temp_dir().join(format!("cobord-acceptance-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    let dir_arg = dir.to_str().unwrap();

    // prime the cache, then zero the stored matrix: shape-valid, value-wrong
    let primed = run(&["--cache-dir", dir_arg, "classify", "RP(2)*RP(2)"]);
    if code(&primed) != 0 {
        return false;
    }
    let path: PathBuf = dir.join(format!("catalog-v{}-dim4.json", env!("CARGO_PKG_VERSION")));
    let mut value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    for row in value["matrix"].as_array_mut().unwrap() {
        for bit in row.as_array_mut().unwrap() {
            *bit = serde_json::json!(0);
        }
    }
    std::fs::write(&path, serde_json::to_string(&value).unwrap()).unwrap();

    let poisoned = run(&["--cache-dir", dir_arg, "classify", "RP(2)*RP(2)"]);
    let _ = std::fs::remove_dir_all(&dir);
    code(&poisoned) == 4 && poisoned.stdout.is_empty()
}

fn json_text_agreement() -> bool {
    let mut ok = true;

    // command echo and payload fields follow the documented schemas
    let numbers = json_of(&run(&["--json", "numbers", "RP(2)"]));
    ok &= numbers["command"] == "numbers";
    ok &= numbers["vector"]
        == serde_json::json!({
            "dimension": 2,
            "numbers": [
                {"partition": [2], "value": 1},
                {"partition": [1, 1], "value": 1},
            ],
        });

    let classify = json_of(&run(&["--json", "classify", "CP(2)"]));
    ok &= classify["class"] == serde_json::json!({"dimension": 4, "monomials": [[2, 2]]});
    ok &= classify["pretty"] == "x2^2";
    ok &= stdout_str(&run(&["classify", "CP(2)"])).trim() == "x2^2";

    let omega = json_of(&run(&["--json", "omega", "4"]));
    ok &= omega == serde_json::json!({
        "command": "omega", "n": 4, "dim": 2, "partitions": [[4], [2, 2]],
    });
    ok &= stdout_str(&run(&["omega", "4"])).trim()
        == "dim \u{3a9}_4 = 2; nondyadic partitions: [4], [2,2]";

    let adem = json_of(&run(&["--json", "adem", "Sq^2 Sq^3"]));
    ok &= adem["element"] == serde_json::json!({"terms": [[5], [4, 1]]});
    ok &= stdout_str(&run(&["adem", "Sq^2 Sq^3"])).trim() == "Sq^5 + Sq^4 Sq^1";

    let basis = json_of(&run(&["--json", "basis", "6"]));
    ok &= basis["basis"] == serde_json::json!([[6], [5, 1], [4, 2]]);

    let cobordant = json_of(&run(&["--json", "cobordant", "CP(2)", "RP(2)*RP(2)"]));
    ok &= cobordant["cobordant"] == serde_json::json!(true);
    ok &= stdout_str(&run(&["cobordant", "CP(2)", "RP(2)*RP(2)"])).trim() == "yes";

    let null = json_of(&run(&["--json", "null", "RP(3)"]));
    ok &= null["null_cobordant"] == serde_json::json!(true);

    let sw = json_of(&run(&["--json", "sw", "RP(2)"]));
    ok &= sw["components"][0]["ring"]
        == serde_json::json!({"generators": [{"name": "a", "degree": 1, "trunc": 3}], "dim": 2});
    ok &= sw["components"][0]["classes"]
        == serde_json::json!([
            {"degree": 0, "element": [[0]]},
            {"degree": 1, "element": [[1]]},
            {"degree": 2, "element": [[2]]},
        ]);

    let bordism = json_of(&run(&["--json", "bordism-dim", "--betti", "1,1,1", "--degree", "2"]));
    ok &= bordism == serde_json::json!({
        "command": "bordism-dim", "betti": [1, 1, 1], "degree": 2, "dim": 2,
    });

    ok
}
