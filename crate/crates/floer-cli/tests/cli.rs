use floer_cli::cli::run;
use floer_cli::dto::{load_cell_complex, load_complex_dump, load, DomainDump};
use floer_cli::exit;
use floer_cli::reproduce::Report;
use floer_core::arc_engine::{braid_diagram, build_cell_complex, Mode};
use floer_core::braid_core::BraidWord;
use proptest::prelude::*;
use std::path::PathBuf;

fn floer(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("floer").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("floer-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn complex_writes_loadable_documents() {
    let (json, cells, doms) = (tmp("c.json"), tmp("cells.json"), tmp("d.json"));
    let (code, out, _) = floer(&[
        "complex", "--braid", "s1", "--strands", "2", "--json", json.to_str().unwrap(),
        "--cells", cells.to_str().unwrap(), "--domains", doms.to_str().unwrap(),
    ]);
    assert_eq!(code, exit::OK, "{out}");
    assert!(out.contains("determinate fraction"));
    let dump = load_complex_dump(&json).unwrap();
    assert_eq!(dump.strands, 2);
    assert_eq!(dump.braid.as_deref(), Some("s1"));
    let cx = load_cell_complex(&cells).unwrap();
    assert_eq!(cx, build_cell_complex(&braid_diagram(Mode::Capped, &BraidWord::new(2, vec![1]).unwrap()).unwrap()).unwrap());
    let ds: Vec<DomainDump> = load(&doms).unwrap();
    assert!(ds.iter().all(|d| d.index == 1.0));
}

#[test]
fn bad_input_exits_with_error() {
    assert_eq!(floer(&["complex", "--braid", "s3", "--strands", "2"]).0, exit::ERROR);
    assert_eq!(floer(&["complex", "--braid", "s1^x", "--strands", "2"]).0, exit::ERROR);
    assert_eq!(floer(&["complex", "--braid", "s1", "--strands", "0"]).0, exit::ERROR);
    assert_eq!(floer(&["complex", "--braid", "", "--strands", "2", "--hbar-min", "3", "--hbar-max", "1"]).0, exit::ERROR);
    assert_eq!(floer(&["complex", "--braid", "", "--strands", "2", "--max-weight", "0"]).0, exit::ERROR);
    let (code, _, err) = floer(&["reproduce", "nope"]);
    assert_eq!(code, exit::ERROR);
    assert!(err.contains("nope"));
    assert_eq!(floer(&["frobnicate"]).0, exit::ERROR);
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(floer(&["--help"]).0, exit::OK);
    assert_eq!(floer(&["--version"]).0, exit::OK);
}

#[test]
fn psi_sharp_statuses_map_to_exit_codes() {
    let (code, out, _) = floer(&["psi-sharp", "--braid", "", "--strands", "2"]);
    assert_eq!(code, exit::OK);
    assert!(out.contains("NoPrimitiveAtBounds"));
    let (code, out, _) = floer(&["psi-sharp", "--braid", "s1^-3 s2 s1^2 s2", "--strands", "3"]);
    assert_eq!(code, exit::INCONCLUSIVE);
    assert!(out.contains("Inconclusive"));
}

#[test]
fn reproduce_writes_report() {
    let p = tmp("model.json");
    let (code, out, _) = floer(&["reproduce", "model-2x2", "--json", p.to_str().unwrap()]);
    assert_eq!(code, exit::OK, "{out}");
    let r: Report = load(&p).unwrap();
    assert_eq!(r.target, "model-2x2");
    assert_eq!(r.exit_code(), exit::OK);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn complex_dump_survives_json(k in 2usize..=3, letters in prop::collection::vec(prop_oneof![Just(1), Just(-1), Just(2), Just(-2)], 0..5), halfarc in any::<bool>()) {
        let letters: Vec<i32> = letters.into_iter().filter(|l: &i32| (l.unsigned_abs() as usize) < k).collect();
        let b = BraidWord::new(k, letters).unwrap();
        let mode = if halfarc { Mode::HalfArc } else { Mode::Capped };
        let fc = floer_cli::parallel::build_braid(mode, &b, Default::default()).unwrap();
        let dump = floer_cli::dto::ComplexDump::new(&fc, None, None);
        let back: floer_cli::dto::ComplexDump = floer_cli::dto::from_json(&floer_cli::dto::to_json(&dump).unwrap()).unwrap();
        prop_assert_eq!(back.differential_matrix(), fc.differential.clone());
        prop_assert_eq!(back, dump);
        let cx: floer_core::CellComplex = floer_cli::dto::from_json(&floer_cli::dto::to_json(&fc.cx).unwrap()).unwrap();
        prop_assert_eq!(cx, fc.cx);
    }
}
