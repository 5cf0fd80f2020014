use casebelief::cases_csv::read_cases;
use casebelief::json::{mass_doc, mass_from_doc, network_doc, network_from_doc, render, MassDoc, NetworkDoc, SetDoc};
use casebelief_core::{corpus, sample, CaseTable};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn mass_documents_roundtrip() {
    let mut boxes = 0;
    let mut tuples = 0;
    for seed in 0..200 {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let f = sample::frame(&mut r, 3, 3, 18);
        let m = sample::proper_bpa(&mut r, &f, 6);
        let text = render(&mass_doc(&m));
        let doc: MassDoc = serde_json::from_str(&text).unwrap();
        for focal in &doc.focals {
            match focal.set {
                SetDoc::Box(_) => boxes += 1,
                SetDoc::Tuples(_) => tuples += 1,
            }
        }
        let back = mass_from_doc(&doc).unwrap();
        assert_eq!(back, m);
        assert_eq!(render(&mass_doc(&back)), text);
    }
    assert!(boxes > 0 && tuples > 0);
}

#[test]
fn network_documents_roundtrip() {
    for net in [corpus::chain_net(), corpus::collider_net(), corpus::forty_sixty_net()] {
        let text = render(&network_doc(&net));
        let doc: NetworkDoc = serde_json::from_str(&text).unwrap();
        let back = network_from_doc(&doc).unwrap();
        assert_eq!(render(&network_doc(&back)), text);
        assert!(back.validate().is_empty());
    }
}

#[test]
fn omitted_box_components_mean_the_whole_domain() {
    let doc: MassDoc = serde_json::from_str(
        r#"{"variables":[{"name":"X","values":["a","b"]},{"name":"Y","values":["c","d"]}],
            "focals":[{"set":{"box":{"X":["a"]}},"mass":"1"}]}"#,
    )
    .unwrap();
    let m = mass_from_doc(&doc).unwrap();
    let (set, _) = m.focals().next().unwrap();
    assert_eq!(set.len(), 2);
    assert!(m.frame().is_box(set));
}

#[test]
fn mass_documents_reject_bad_content() {
    let frame = r#""variables":[{"name":"X","values":["a","b"]}]"#;
    for (focals, needle) in [
        (r#"[{"set":{"box":{"X":["c"]}},"mass":"1"}]"#, "focals[0].set: unknown value `c`"),
        (r#"[{"set":{"box":{"W":["a"]}},"mass":"1"}]"#, "unknown variable `W`"),
        (r#"[{"set":{"tuples":[]},"mass":"1"}]"#, "empty set"),
        (r#"[{"set":{"tuples":[["a","b"]]},"mass":"1"}]"#, "tuple has 2 labels"),
        (r#"[{"set":{"box":{}},"mass":"one"}]"#, "focals[0].mass"),
        (r#"[{"set":{"box":{}},"mass":"1/3"}]"#, "expected 1"),
    ] {
        let doc: MassDoc = serde_json::from_str(&format!("{{{frame},\"focals\":{focals}}}")).unwrap();
        let err = mass_from_doc(&doc).unwrap_err();
        assert!(err.contains(needle), "{focals}: {err}");
    }
}

fn cases(text: &str) -> CaseTable {
    read_cases(text.as_bytes(), "test", None).unwrap()
}

#[test]
fn csv_domains_follow_first_appearance() {
    let t = cases("B,A\nq|p,z\np,y|z\n");
    let names: Vec<&str> = t.frame().names().collect();
    assert_eq!(names, ["B", "A"]);
    assert_eq!(t.frame().variable(0).values(), ["q", "p"]);
    assert_eq!(t.frame().variable(1).values(), ["z", "y"]);
    assert_eq!(t.total(), 2);
}

#[test]
fn csv_counts_and_whitespace() {
    let t = cases("X , count\n a | b , 3\nb,2\n");
    assert_eq!(t.total(), 5);
    assert_eq!(t.records()[0].values[0].len(), 2);
    // Without a trailing count column every row counts once.
    assert_eq!(cases("X,Y\na,b\na,b\n").total(), 2);
}

#[test]
fn csv_errors_name_the_position() {
    for (text, needle) in [
        ("X,Y\na,b\nc\n", "line 3: expected 2 fields, found 1"),
        ("X\n\"\"\n", "line 2, column 1: empty cell"),
        ("X,count\na,zero\n", "line 2, column 2: `zero` is not an integer count"),
        ("X,count\na,0\n", "line 2, column 2: count must be positive"),
        ("X\na||b\n", "line 2, column 1: `` is not a valid label"),
        ("count\n1\n", "header names no variables"),
        ("X\n", "no case rows"),
    ] {
        let err = read_cases(text.as_bytes(), "t.csv", None).unwrap_err().to_string();
        assert!(err.contains(needle), "{text:?}: {err}");
        assert!(err.starts_with("t.csv: "));
    }
}
