mod common;

use common::*;

#[test]
fn logical_output_matches_listings() {
    let expected = sentences(LISTINGS);
    assert_eq!(expected.len(), 28, "{:?}", expected.keys());
    let actual = sentences(&logical(EXAMPLE));
    let mut bad = Vec::new();
    for (k, toks) in &expected {
        match actual.get(k) {
            Some(a) if a == toks => {}
            Some(a) => bad.push(format!("{k:?}\n  want {}\n  got  {}", toks.join(" "), a.join(" "))),
            None => bad.push(format!("{k:?} missing")),
        }
    }
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}
