use qseries::parse;
use qseries_verify::{verify, Expected, Registry, Status};

#[test]
fn printing_is_a_fixpoint_on_the_corpus() {
    let reg = Registry::builtin().unwrap();
    for rec in reg.records() {
        for e in [&rec.lhs, &rec.rhs] {
            let text = e.to_string();
            let again = parse(&text).unwrap_or_else(|err| panic!("{}: {text}: {err}", rec.id));
            assert_eq!(&again, e, "{}", rec.id);
            assert_eq!(again.to_string(), text);
        }
    }
}

#[test]
fn every_printed_variant_has_a_derived_partner() {
    let reg = Registry::builtin().unwrap();
    for rec in reg.records().iter().filter(|r| r.expected == Expected::Flagged) {
        let base = rec.id.trim_end_matches("-printed").trim_end_matches("-bracket");
        let partner = reg.get(base).unwrap_or_else(|| panic!("{} has no partner", rec.id));
        assert_eq!(partner.expected, Expected::Pass);
    }
}

#[test]
fn reports_are_deterministic() {
    let reg = Registry::builtin().unwrap();
    for id in ["R-LA3", "R-23-printed", "R-411"] {
        let rec = reg.get(id).unwrap();
        let mut a = verify(rec, Some(30));
        let mut b = verify(rec, Some(30));
        a.elapsed_ms = 0;
        b.elapsed_ms = 0;
        assert_eq!(a, b);
    }
}

#[test]
fn failures_name_the_instantiation() {
    let reg = Registry::builtin().unwrap();
    let r = verify(reg.get("R-23-printed").unwrap(), Some(20));
    assert_eq!(r.status, Status::Fail);
    assert_eq!(r.first_fail_exponent.as_deref(), Some("0"));
    assert_eq!(r.error.as_deref(), Some("instantiation 0"));
}
