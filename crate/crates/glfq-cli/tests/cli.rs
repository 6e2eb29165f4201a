use std::process::Command;

use glfq_cli::json::{CentralVectorJson, Degree1Json, GenericProductJson, SuiteJson};
use glfq_cli::run;
use glfq_core::center::{completed_product, fh_polynomials};
use glfq_core::conjtype::Polypartition;
use glfq_core::field::Field;

fn glfq(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("glfq").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn worked_examples() {
    let (code, out, _) = glfq(&["class-size", "--q", "5", "--n", "6", "--type", "{X^2+X+1:(2);X+3:(1,1)}"]);
    assert_eq!((code, out.trim()), (0, "38418317437500000000"));
    let (code, out, _) = glfq(&["type", "--q", "5", "--mat", "0,2;1,2"]);
    assert_eq!((code, out.trim()), (0, "{X^2+3*X+3:(1)}"));
    let (code, out, _) = glfq(&["type", "--p", "5", "--e", "1", "--mat", "0,2;1,2"]);
    assert_eq!((code, out.trim()), (0, "{X^2+3*X+3:(1)}"));
}

#[test]
fn exit_codes() {
    assert_eq!(glfq(&["nonsense"]).0, 2);
    assert_eq!(glfq(&["type", "--q", "6", "--mat", "1"]).0, 2);
    assert_eq!(glfq(&["type", "--q", "5", "--p", "5", "--mat", "1"]).0, 2);
    assert_eq!(glfq(&["class-size", "--q", "3", "--n", "2", "--type", "{X+1:(1"]).0, 2);
    assert_eq!(glfq(&["verify", "--suite", "nope"]).0, 2);
    // A singular matrix has no type: a computation error.
    let (code, _, err) = glfq(&["type", "--q", "3", "--mat", "1,1;1,1"]);
    assert_eq!(code, 1, "{err}");
    assert_eq!(glfq(&["--help"]).0, 0);
}

#[test]
fn generic_product_json_round_trips() {
    let (code, out, _) = glfq(&["generic-product", "--q", "3", "--a", "{X+1:(1)}", "--b", "{X+1:(1)}", "--json"]);
    assert_eq!(code, 0);
    let doc: GenericProductJson = serde_json::from_str(&out).unwrap();
    assert_eq!(serde_json::to_string_pretty(&doc).unwrap().trim(), out.trim());
    let f = Field::with_order(3).unwrap();
    let l = Polypartition::linear(&f, 2, &[1]);
    let gp = fh_polynomials(&f, &l, &l).unwrap();
    assert_eq!(doc.to_core(&f).unwrap(), gp);
    assert_eq!(GenericProductJson::from_core(&f, &gp), doc);
}

#[test]
fn generic_product_verification_is_reported() {
    // This pair is one of the documented Farahat–Higman mismatches.
    let (code, out, _) =
        glfq(&["generic-product", "--q", "3", "--a", "{X+1:(1)}", "--b", "{X+1:(1)}", "--verify-at", "3", "--json"]);
    let doc: GenericProductJson = serde_json::from_str(&out).unwrap();
    let v = doc.verification.unwrap();
    assert_eq!(v.n, vec![3]);
    assert_eq!(code, if v.pass { 0 } else { 1 });
    let (code, out, _) = glfq(&["generic-product", "--q", "2", "--a", "{}", "--b", "{}", "--verify-at", "2"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("PASS"));
}

#[test]
fn class_product_json_matches_library() {
    let (code, out, _) = glfq(&["class-product", "--q", "3", "--n", "2", "--a", "{X+1:(1)}", "--b", "{X+1:(1)}", "--json"]);
    assert_eq!(code, 0);
    let doc: CentralVectorJson = serde_json::from_str(&out).unwrap();
    let f = Field::with_order(3).unwrap();
    let l = Polypartition::linear(&f, 2, &[1]);
    assert_eq!(doc.to_core(&f).unwrap(), completed_product(&f, &l, &l, 2).unwrap());
}

#[test]
fn degree1_json() {
    let (code, out, _) = glfq(&["degree1", "--q", "4", "--a", "t", "--b", "t+1", "--n", "2", "--json"]);
    assert_eq!(code, 0);
    let doc: Degree1Json = serde_json::from_str(&out).unwrap();
    assert_eq!(doc.case, "even-generic");
    assert_eq!(doc.projection.unwrap().n, 2);
}

#[test]
fn counts_and_laws() {
    assert_eq!(glfq(&["count", "e", "--q", "2", "--n", "2", "--k-plus", "1", "--k", "0", "--k1", "0"]).1.trim(), "3");
    assert_eq!(glfq(&["count", "isos", "--q", "2", "--n", "2"]).1.trim(), "46");
    assert_eq!(glfq(&["count", "constrained", "--q", "2", "--j", "0", "--k", "1", "--l", "1", "--m", "2"]).1.trim(), "2");
    assert_eq!(glfq(&["ranklaw", "law", "--d", "2", "--q", "2", "--a", "2", "--c", "2"]).1.trim(), "3/8");
    assert_eq!(glfq(&["ranklaw", "dim-sum", "--n", "2", "--q", "2", "--j", "0", "--k", "1", "--l", "1", "--m", "1"]).1.trim(), "1/3");
    assert_eq!(glfq(&["ranklaw", "h", "--r", "2", "--c", "2", "--q", "2"]).1.trim(), "35");
}

#[test]
fn seeded_verify_is_deterministic() {
    let args = ["verify", "--suite", "pi", "--samples", "30", "--seed", "7", "--json", "--threads", "2"];
    let (c1, o1, _) = glfq(&args);
    let (c2, o2, _) = glfq(&args);
    assert_eq!((c1, &o1), (c2, &o2));
    let docs: Vec<SuiteJson> = serde_json::from_str(&o1).unwrap();
    assert_eq!(docs[0].seed, 7);
    assert_eq!(c1, if docs[0].pass { 0 } else { 1 });
}

#[test]
fn binary_runs() {
    let out = Command::new(env!("CARGO_BIN_EXE_glfq")).args(["census", "--q", "2", "--n", "2"]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));
    let out = Command::new(env!("CARGO_BIN_EXE_glfq")).arg("census").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
