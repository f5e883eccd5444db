//! Golden tests of the `spr` binary. Run with `SPR_BLESS=1` to rewrite the
//! expected outputs under `tests/golden`.

use std::path::{Path, PathBuf};
use std::process::Command;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests")
}

fn spr(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_spr"))
        .args(args)
        .current_dir(root())
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn golden(name: &str, args: &[&str], code: i32) {
    let (got, stdout, stderr) = spr(args);
    assert_eq!(got, code, "{name}: stdout {stdout} stderr {stderr}");
    let path = root().join("golden").join(format!("{name}.out"));
    if std::env::var_os("SPR_BLESS").is_some() {
        std::fs::write(&path, &stdout).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert_eq!(stdout, expected, "{name}");
}

#[test]
fn parse_dumps_tree() {
    golden("parse", &["parse", "a.(b||c).d"], 0);
}

#[test]
fn lang_listings() {
    golden("lang_step", &["lang", "a.(b||c)", "--size", "3"], 0);
    golden("lang_zero", &["lang", "0", "--size", "3"], 0);
    golden("lang_star", &["lang", "a*", "--size", "2"], 0);
    golden("lang_parstar", &["lang", "a^*", "--size", "3"], 0);
}

#[test]
fn compile_reports() {
    golden("compile_diamond", &["compile", "a.(b||c).d"], 0);
    golden("compile_one", &["compile", "1"], 0);
    golden("compile_parstar_cap", &["compile", "a^*", "--width", "2"], 0);
    let (code, stdout, stderr) = spr(&["compile", "a||b||c", "--width", "2"]);
    assert_eq!(code, 2);
    assert!(stdout.is_empty());
    assert!(stderr.contains("cap W=2"), "{stderr}");
}

#[test]
fn compile_writes_files() {
    let dir = std::env::temp_dir().join(format!("spr-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("a.json");
    let dot = dir.join("a.dot");
    let (code, ..) = spr(&["compile", "a.(b||c).d", "--out", out.to_str().unwrap(), "--dot", dot.to_str().unwrap()]);
    assert_eq!(code, 0);
    let json = std::fs::read_to_string(&out).unwrap();
    assert_eq!(json, std::fs::read_to_string(root().join("data/diamond.sa.json")).unwrap());
    let dot = std::fs::read_to_string(&dot).unwrap();
    assert!(dot.ends_with('\n') && dot.contains("doublecircle") && dot.contains("<b,c>"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn automaton_commands() {
    golden("accept_yes", &["accept", "data/diamond.sa.json", "a.<b,c>.d"], 0);
    golden("accept_no", &["accept", "data/diamond.sa.json", "a.b.c.d"], 1);
    golden("accept_state", &["accept", "data/diamond.sa.json", "d", "--state", "d"], 0);
    golden("words_diamond", &["words", "data/diamond.sa.json", "--len", "5"], 0);
    golden("words_loop", &["words", "data/loop.sa.json", "--len", "2"], 0);
    golden("extract_diamond", &["extract", "data/diamond.sa.json"], 0);
    golden("extract_loop", &["extract", "data/loop.sa.json"], 0);
}

#[test]
fn equiv_verdicts() {
    golden("equiv_a4", &["equiv", "(a+b).c", "a.c+b.c", "--size", "3"], 0);
    golden("equiv_differ", &["equiv", "a||b", "a.b", "--size", "2"], 1);
    golden("equiv_same", &["equiv", "a", "a", "--size", "1"], 0);
}

#[test]
fn axiom_report() {
    golden("axioms_small", &["axioms", "--size", "3", "--samples", "20", "--seed", "1"], 0);
    let a = spr(&["axioms", "--samples", "1", "--seed", "7"]);
    let b = spr(&["axioms", "--samples", "1", "--seed", "7"]);
    assert_eq!(a, b);
    assert_eq!(a.1.lines().count(), 28);
}

#[test]
fn stm_commands() {
    golden("stm_increment", &["stm", "run", "data/increment.json", "--input", "1011"], 0);
    golden("stm_bound", &["stm", "run", "data/increment.json", "--input", "1011", "--max-steps", "0"], 1);
    golden("stm_parity_odd", &["stm", "run", "data/parity.json", "--input", "1"], 1);
    golden("stm_copy_trace", &["stm", "run", "data/copy.json", "--input", "101", "--trace"], 0);
    golden("stm_words_diamond", &["stm", "words", "data/diamond.json"], 0);
    let (_, trace, _) = spr(&["stm", "run", "data/copy.json", "--input", "101", "--trace"]);
    assert!(trace.contains("□[1]01□"));
}

#[test]
fn usage_and_format_errors() {
    let bad: [&[&str]; 7] = [
        &["lang", "a.("],
        &["equiv", "a", "b+"],
        &["frobnicate"],
        &["lang"],
        &["accept", "data/copy.json", "a"],
        &["stm", "run", "data/diamond.sa.json"],
        &["stm", "run", "data/copy.json", "--input", "12"],
    ];
    for args in bad {
        let (code, _, stderr) = spr(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(!stderr.is_empty());
    }
    let (code, stdout, _) = spr(&["--help"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("stm"));
}

#[test]
fn missing_file_is_an_error() {
    assert!(!Path::new("data/nope.json").exists());
    let (code, _, stderr) = spr(&["words", "data/nope.json"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("nope.json"));
}
