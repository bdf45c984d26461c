use proptest::prelude::*;
use typoid::dsl::{parse, parse_with_diagnostics, Code, Diagnostic, Severity};

fn errors(src: &str) -> Vec<Diagnostic> {
    parse(src).expect_err("source should not parse")
}

fn codes(diags: &[Diagnostic]) -> Vec<&'static str> {
    diags.iter().map(|d| d.code.as_str()).collect()
}

const MISMATCH: &str = "typoid A {
  terms x y;
  path p : x -> y;
  path q : y -> x;
  comp p . p = p;
}
";

#[test]
fn endpoint_mismatch_points_at_the_second_operand() {
    let diags = errors(MISMATCH);
    let d = diags.iter().find(|d| d.code == Code::Endpoints).unwrap();
    assert_eq!(d.code.as_str(), "E005");
    assert_eq!((d.span.line, d.span.column, d.span.len), (5, 12, 1));
    assert_eq!(d.severity, Severity::Error);
}

#[test]
fn inserting_a_comment_line_shifts_lines_only() {
    let before = errors(MISMATCH);
    let after = errors(&format!("# header\n{MISMATCH}"));
    assert_eq!(before.len(), after.len());
    for (b, a) in before.iter().zip(&after) {
        assert_eq!(
            (a.span.line, a.span.column, a.span.len),
            (b.span.line + 1, b.span.column, b.span.len)
        );
        assert_eq!((a.code, &a.message), (b.code, &b.message));
    }
}

#[test]
fn recovery_reports_every_bad_statement() {
    let src = "typoid C {
  terms x x;
  path p : x -> z;
  edge $ e;
  pinv q = p
}
typoid D { terms a; }
";
    let diags = errors(src);
    assert_eq!(codes(&diags), ["E003", "E004", "E001", "E002", "E002"]);
    assert_eq!(diags[1].span.line, 3);
    assert_eq!(diags[4].span.line, 6);
    // any error withholds the whole document
    let (doc, _) = parse_with_diagnostics(src);
    assert!(doc.is_none());
}

#[test]
fn each_code_has_a_trigger() {
    let cases = [
        ("typoid A { terms x; } typoid A { terms y; }", "E003"),
        ("typoid A { terms x; path p : x -> y; }", "E004"),
        ("typoid A { terms x; path p : x -> x; pinv p = p; idtoeqv p => eqv_x; comp p . p = p; comp p . p = refl_x; }", "E006"),
        ("typoid A { terms x; path p : x -> x; pinv p = p; idtoeqv p => eqv_x; }", "E007"),
        ("typoid A { }", "E008"),
        ("typoid A { terms x; } typoid B { terms y; path p : y -> y; comp p . p = refl_y; pinv p = p; idtoeqv p => eqv_y; }
          morphism m : B -> A { term y |-> x; path refl_y |-> refl_x; }", "E009"),
        ("typoid A { terms x ; } %", "E001"),
        ("typoid A { terms x; path p x -> x; }", "E002"),
        ("typoid A { terms x y; path p : x -> y; path q : y -> x; comp p . q = refl_x; comp q . p = refl_y; pinv p = q; pinv q = p;
          edge e : x ~ y; einv e = e; }", "E005"),
    ];
    for (src, code) in cases {
        let diags = errors(src);
        assert!(codes(&diags).contains(&code), "{src}: {diags:?}");
    }
}

#[test]
fn missing_unit_absorption_suggests_strictunits() {
    let src = "typoid B { terms x; edge e : x ~ x; star e * e = eqv_x; einv e = e; }";
    let diags = errors(src);
    assert!(diags.iter().all(|d| d.code == Code::Missing));
    assert!(diags.iter().any(|d| d.message.contains("strictunits")));
    let fixed = "typoid B { terms x; strictunits; edge e : x ~ x; star e * e = eqv_x; einv e = e; }";
    assert!(parse(fixed).is_ok());
}

#[test]
fn trivial_cells_only_warn() {
    let src = "typoid A { terms x; cell eqv_x == eqv_x; }";
    let (doc, diags) = parse_with_diagnostics(src);
    assert!(doc.is_some());
    assert_eq!(codes(&diags), ["W001"]);
    assert_eq!(diags[0].severity, Severity::Warning);
}

#[test]
fn display_is_line_column_code_message() {
    let d = &errors("typoid A { terms x; path p x -> x; }")[0];
    let shown = d.to_string();
    assert!(shown.starts_with("1:28: error[E002]: "), "{shown}");
    // an empty terms list is the empty typoid, not an error
    assert!(parse("typoid A { terms ; }").is_ok());
}

fn line_length(src: &str, line: u32) -> u32 {
    src.lines()
        .nth(line as usize - 1)
        .map_or(0, |l| l.chars().count() as u32)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    /// Arbitrary damage never panics and every span lies on real text.
    #[test]
    fn spans_stay_inside_the_source(cut in 0usize..400, junk in "[a-z;:{}~.*=# \n$-]{0,12}") {
        let base = "typoid eq_z2 {\n  terms x;\n  strictunits;\n  path p : x -> x;\n  comp p . p = refl_x;\n  pinv p = p;\n  edge e : x ~ x;\n  star e * e = eqv_x;\n  einv e = e;\n  idtoeqv p => e;\n}\nmorphism m : eq_z2 -> eq_z2 {\n  term x |-> x;\n}\n";
        let at = cut % (base.len() + 1);
        let src = format!("{}{}{}", &base[..at], junk, &base[at..]);
        let (doc, diags) = parse_with_diagnostics(&src);
        let errs = diags.iter().filter(|d| d.severity == Severity::Error).count();
        prop_assert_eq!(doc.is_some(), errs == 0);
        for d in &diags {
            prop_assert!(d.span.line >= 1 && d.span.column >= 1 && d.span.len >= 1, "{:?}", d);
            prop_assert!(d.span.line as usize <= src.lines().count().max(1), "{:?}", d);
            prop_assert!(d.span.column + d.span.len - 1 <= line_length(&src, d.span.line).max(1), "{:?}\n{}", d, src);
        }
        prop_assert_eq!(parse_with_diagnostics(&src).1, diags);
    }
}
