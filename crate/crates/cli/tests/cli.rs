use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

use facto_core::sset::delta_category;

fn facto(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_facto"));
    c.args(args).env_remove("FACTO_MAX_ENUM");
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json report")
}

struct Files(tempfile::TempDir);

impl Files {
    fn new() -> Files {
        Files(tempfile::tempdir().unwrap())
    }

    fn put(&self, name: &str, text: &str) -> String {
        let p: PathBuf = self.0.path().join(name);
        if let Some(d) = p.parent() {
            std::fs::create_dir_all(d).unwrap();
        }
        std::fs::write(&p, text).unwrap();
        p.display().to_string()
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }
}

#[test]
fn zar_cover_with_certificate() {
    let f = Files::new();
    let base = f.put("z6.json", r#"{"kind":"zmod","n":6}"#);
    let fam = f.put("f.json", "[2,3]");
    let r = report(&facto(&["cover", "--topology", "zar", "--base", &base, "--family", &fam], &[]));
    assert_eq!(r["command"], "cover");
    assert_eq!(r["result"]["covers"], true);
    assert_eq!(r["result"]["certificate"], serde_json::json!([2, 1]));
}

#[test]
fn a_false_answer_still_exits_zero() {
    let f = Files::new();
    let base = f.put("z6.json", r#"{"kind":"zmod","n":6}"#);
    let fam = f.put("f.json", r#"{"elements":[2]}"#);
    let r = report(&facto(&["cover", "--topology", "zar", "--base", &base, "--family", &fam], &[]));
    assert_eq!(r["result"]["covers"], false);
}

#[test]
fn dom_and_fin_covers() {
    let f = Files::new();
    let base = f.put("z12.json", r#"{"kind":"zmod","n":12}"#);
    let fam = f.put("dom.json", r#"{"ideals":[[2],[3]]}"#);
    let r = report(&facto(&["cover", "--topology", "dom", "--base", &base, "--family", &fam], &[]));
    assert_eq!(r["result"]["covers"], true);
    let fam = f.put(
        "fin.json",
        r#"{"homs":[{"target":{"kind":"zmod","n":2},"images":{"1":"1"}}]}"#,
    );
    let r = report(&facto(&["cover", "--topology", "fin", "--base", &base, "--family", &fam], &[]));
    assert_eq!(r["result"]["covers"], false);
}

#[test]
fn delta_nis_spectrum_dot_has_seven_nodes() {
    let f = Files::new();
    let obj = f.put("delta2.json", r#"{"standard":"delta:2","dim":3}"#);
    let out = facto(&["spectrum", "--topology", "delta-nis", "--object", &obj, "--format", "dot"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let dot = String::from_utf8(out.stdout).unwrap();
    assert_eq!(dot.matches("[label=").count(), 7);
    // the face poset of a triangle has 9 covering relations
    assert_eq!(dot.matches(" -> ").count(), 9);

    let target = f.path("out/spec.dot");
    std::fs::create_dir_all(target.parent().unwrap()).unwrap();
    let t = target.display().to_string();
    let out = facto(&["spectrum", "--topology", "delta-nis", "--object", &obj, "--format", "dot", "--out", &t], &[]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&target).unwrap(), dot);
}

#[test]
fn ring_spectra_and_lattice() {
    let f = Files::new();
    let obj = f.put("z12.json", r#"{"kind":"zmod","n":12}"#);
    let r = report(&facto(&["spectrum", "--topology", "zar", "--object", &obj], &[]));
    assert_eq!(r["result"]["elements"].as_array().unwrap().len(), 2);
    assert_eq!(r["result"]["order"].as_array().unwrap().len(), 0);
    let r = report(&facto(&["spectrum", "--topology", "zar", "--object", &obj, "--lattice"], &[]));
    assert_eq!(r["result"]["elements"].as_array().unwrap().len(), 4);
    assert!(r["result"]["meet"].is_array());
}

#[test]
fn loc_cons_factorization() {
    let f = Files::new();
    let h = f.put(
        "h.json",
        r#"{"source":{"kind":"zmod","n":12},"target":{"kind":"zmod","n":4},"images":{"1":"1"}}"#,
    );
    let r = report(&facto(&["factorize", "--system", "loc-cons", "--hom", &h], &[]));
    let res = &r["result"];
    assert_eq!(res["composite_exact"], true);
    assert_eq!(res["left_in_class"], true);
    assert_eq!(res["right_in_class"], true);
    // Z/12 → Z/4 is the localization at 9
    assert_eq!(res["middle"]["order"], 4);
}

#[test]
fn nested_files_resolve() {
    let f = Files::new();
    f.put("rings/z4.json", r#"{"kind":"zmod","n":4}"#);
    f.put("rings/z2.json", r#"{"kind":"zmod","n":2}"#);
    let h = f.put("homs/h.json", r#"{"source":"../rings/z4.json","target":"../rings/z2.json","images":{"1":"1"}}"#);
    let r = report(&facto(&["factorize", "--system", "surj-mono", "--hom", &h], &[]));
    assert_eq!(r["result"]["middle"]["order"], 2);
}

#[test]
fn broken_ring_is_an_error_with_witness() {
    let f = Files::new();
    let bad = f.put(
        "bad.json",
        r#"{"kind":"table","elements":["0","1"],"add":[[0,1],[1,0]],"mul":[[1,0],[0,1]],"one":"1"}"#,
    );
    let out = facto(&["classify", "--ring", &bad], &[]);
    assert_ne!(out.status.code(), Some(0));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("not a ring") && err.contains("distributivity"), "{err}");
}

#[test]
fn parse_errors_name_the_field() {
    let f = Files::new();
    let bad = f.put("bad.json", "{\"kind\":\"zmod\",\n \"n\":\"twelve\"}");
    let out = facto(&["classify", "--ring", &bad], &[]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.json") && err.contains("line 2"), "{err}");
}

#[test]
fn sset_file_above_truncation() {
    let f = Files::new();
    let x = f.put(
        "x.json",
        r#"{"dim":1,"nondegenerate":{"0":["a","b"],"1":[{"name":"e","faces":["b","a"]}]}}"#,
    );
    let out = facto(&["spectrum", "--topology", "delta-nis", "--object", &x], &[]);
    assert_ne!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("truncation too low"));
}

#[test]
fn usage_errors() {
    let out = facto(&["frobnicate"], &[]);
    assert_eq!(out.status.code(), Some(2));
    let out = facto(&["verify", "--suite", "duality", "--max-enum", "0"], &[]);
    assert_eq!(out.status.code(), Some(2));
    let out = facto(&["verify", "--suite", "duality", "--format", "dot"], &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_from_env_and_flag_precedence() {
    let f = Files::new();
    let r = f.put("r.json", r#"{"kind":"product","factors":[{"kind":"zmod","n":4},{"kind":"zmod","n":3}]}"#);
    let out = facto(&["classify", "--ring", &r], &[("FACTO_MAX_ENUM", "3")]);
    assert_ne!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
    let out = facto(&["classify", "--ring", &r, "--max-enum", "10000000"], &[("FACTO_MAX_ENUM", "3")]);
    let rep = report(&out);
    assert_eq!(rep["config"]["max_enum"], 10_000_000);
    assert_eq!(rep["result"]["points"]["zar"], 2);
}

#[test]
fn classify_ring_and_sset() {
    let f = Files::new();
    let r = f.put("z8.json", r#"{"kind":"zmod","n":8}"#);
    let rep = report(&facto(&["classify", "--ring", &r], &[]));
    assert_eq!(rep["result"]["classification"]["is_local"]["holds"], true);
    assert_eq!(rep["result"]["classification"]["is_domain"]["holds"], false);
    assert_eq!(rep["result"]["duality"]["holds"], true);

    let x = f.put("d1.json", r#"{"standard":"delta:1","dim":3}"#);
    let rep = report(&facto(&["classify", "--object", &x], &[]));
    assert_eq!(rep["result"]["local"]["local"], true);
    assert_eq!(rep["result"]["isomorphic_to_simplex"], 1);
    let rep = report(&facto(&["classify", "--object", &x, "--topology", "raw"], &[]));
    assert_eq!(rep["result"]["local"]["local"], false);
    let y = f.put("b2.json", r#"{"standard":"boundary:2","dim":3}"#);
    let rep = report(&facto(&["classify", "--object", &y], &[]));
    assert_eq!(rep["result"]["local"]["local"], false);
}

#[test]
fn deg_ndeg_collapse() {
    let f = Files::new();
    let m = f.put(
        "m.json",
        r#"{"source":{"standard":"delta:1","dim":3},"target":{"standard":"delta:0","dim":3},
            "images":{"0":{"0":"0","1":"0"},"1":{"01":"0·(0,0)"}}}"#,
    );
    let r = report(&facto(&["factorize", "--system", "deg-ndeg", "--hom", &m], &[]));
    let res = &r["result"];
    assert_eq!(res["composite_exact"], true);
    assert_eq!(res["right_nondegenerate"], true);
    assert_eq!(res["middle"]["nondegenerate"], 1);
}

fn write_category(f: &Files, name: &str, c: &facto_core::orth::FinCat) -> String {
    f.put(name, &serde_json::to_string(&c.to_desc()).unwrap())
}

#[test]
fn orthogonality_in_a_delta_fragment() {
    let f = Files::new();
    let d = delta_category(1);
    let cat = write_category(&f, "delta.json", &d);
    let surj = (0..d.num_morphisms())
        .find(|&m| d.src(m) == 1 && d.tgt(m) == 0)
        .map(|m| d.morphism_name(m).to_string())
        .unwrap();
    let r = report(&facto(&["orthogonal", "--category", &cat, "--u", &surj, "--f", &surj], &[]));
    assert_eq!(r["result"]["orthogonal"], false);
    assert!(r["result"]["witness"].is_object());
    let id = d.morphism_name(d.id(0)).to_string();
    let r = report(&facto(&["orthogonal", "--category", &cat, "--u", &id, "--f", &surj], &[]));
    assert_eq!(r["result"]["orthogonal"], true);
}

#[test]
fn orthogonality_of_ring_homs() {
    let f = Files::new();
    let u = f.put(
        "u.json",
        r#"{"source":{"kind":"zmod","n":4},"target":{"kind":"zmod","n":2},"images":{"1":"1"}}"#,
    );
    let g = f.put(
        "f.json",
        r#"{"source":{"kind":"zmod","n":2},"target":{"kind":"gf","p":2,"k":2},"images":{"1":"1"}}"#,
    );
    let r = report(&facto(&["orthogonal", "--u", &u, "--f", &g], &[]));
    assert_eq!(r["result"]["orthogonal"], true);
}

#[test]
fn comprehensive_factorization_of_an_object() {
    let f = Files::new();
    let text = r#"{
        "source": {"objects":["*"],"morphisms":[{"id":"1","src":"*","tgt":"*"}],"identities":{"*":"1"}},
        "target": {"objects":["a","b"],"morphisms":[{"id":"1a","src":"a","tgt":"a"},{"id":"1b","src":"b","tgt":"b"},
                   {"id":"u","src":"a","tgt":"b"}],"identities":{"a":"1a","b":"1b"}},
        "obj_map": {"*":"b"}
    }"#;
    let p = f.put("obj.json", text);
    let r = report(&facto(&["factorize", "--system", "fin-drfib", "--hom", &p], &[]));
    let res = &r["result"];
    assert_eq!(res["composite_exact"], true);
    assert_eq!(res["first_in_class"], true);
    assert_eq!(res["second_in_class"], true);
    // C/b has the objects (a, u) and (b, id)
    assert_eq!(res["middle"]["category"]["objects"].as_array().unwrap().len(), 2);
    let r = report(&facto(&["classify", "--functor", &p], &[]));
    // b is terminal, so picking it out is final
    assert_eq!(r["result"]["final"], true);
    assert_eq!(r["result"]["discrete_right_fibration"], false);
}

#[test]
fn epi_mono_of_a_linear_map_and_orbits() {
    let f = Files::new();
    let p = f.put("lin.json", r#"{"source":{"q":3,"n":2},"target":{"q":3,"n":2},"columns":[[1,1],[2,2]]}"#);
    let r = report(&facto(&["factorize", "--system", "epi-mono", "--hom", &p], &[]));
    assert_eq!(r["result"]["image"]["rank"], 1);
    assert_eq!(r["result"]["composite_exact"], true);

    let v = f.put("v.json", r#"{"q":2,"n":3}"#);
    let r = report(&facto(&["spectrum", "--topology", "epi-mono", "--object", &v], &[]));
    assert_eq!(r["result"]["elements"].as_array().unwrap().len(), 8);

    // Z/2 swapping a and b, fixing c
    let g = f.put(
        "g.json",
        r#"{"group":{"table":[[0,1],[1,0]]},"carrier":["a","b","c"],"action":[[0,1],[1,0],[2,2]]}"#,
    );
    let r = report(&facto(&["spectrum", "--topology", "epi-mono", "--object", &g], &[]));
    assert_eq!(r["result"]["orbits"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_suites() {
    let r = report(&facto(&["verify", "--suite", "duality"], &[]));
    assert_eq!(r["result"]["passed"], true);
    let r = report(&facto(&["verify", "--suite", "ez"], &[]));
    assert_eq!(r["result"]["passed"], true);
}

#[test]
fn timing_is_opt_in() {
    let r = report(&facto(&["verify", "--suite", "duality"], &[]));
    assert!(r.get("timing_ms").is_none());
    let r = report(&facto(&["verify", "--suite", "duality", "--timing"], &[]));
    assert!(r["timing_ms"].is_number());
}

#[test]
fn same_inputs_same_bytes() {
    let f = Files::new();
    let obj = f.put("z30.json", r#"{"kind":"zmod","n":30}"#);
    let args = ["spectrum", "--topology", "dom", "--object", obj.as_str(), "--lattice"];
    let a = facto(&args, &[]);
    let b = facto(&args, &[]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(Path::new(&obj).exists());
}
