use ringdef_web::{s_integer, semilocal, symbol};

#[test]
fn symbol_panel() {
    assert_eq!(symbol("-1", "-1", "2"), "-1");
    assert_eq!(symbol("-1", "-1", "inf"), "-1");
    assert_eq!(symbol("3", "5", "7"), "1");
    assert!(symbol("0", "1", "2").starts_with("error:"));
    assert!(symbol("1", "1", "9").starts_with("error:"));
}

#[test]
fn semilocal_panel() {
    let out = semilocal("2", "3/5");
    assert!(out.contains("formula says member"), "{out}");
    assert!(out.contains("valuations say member"));
    assert!(out.contains("Y1 = "));
    let out = semilocal("2", "1/2");
    assert!(out.contains("formula says not a member"));
    assert!(semilocal("4", "1").starts_with("error:"));
}

#[test]
fn s_integer_panel() {
    let out = s_integer("2,3", "5/6");
    assert!(out.contains("certificate says member"), "{out}");
    assert!(out.contains("valuations say member"));
    let out = s_integer("2,3", "1/5");
    assert!(out.contains("certificate says not a member"));
    assert!(out.contains("valuations say not a member"));
}
