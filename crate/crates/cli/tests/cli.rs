use itertools::Itertools;
use roth_cli::{run, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn roth(args: &str) -> roth_cli::Outcome {
    run(std::iter::once("roth").chain(args.split_whitespace()))
}

fn ok(args: &str) -> String {
    let out = roth(args);
    assert_eq!(out.code, EXIT_OK, "{args}: {}", out.stderr);
    out.stdout.trim_end().to_string()
}

fn json(args: &str) -> Value {
    let out = roth(&format!("--json {args}"));
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{args}: {e}: {}", out.stdout))
}

#[test]
fn golden_outputs() {
    assert_eq!(ok("scroll section 5,9,11,15"), "S_12,13,15");
    assert_eq!(ok("scroll section 2,2,2"), "S_3,3");
    assert_eq!(ok("scroll degenerates 2,2 1,3"), "true");
    assert_eq!(ok("scroll degenerates 1,3 2,2"), "false");
    assert_eq!(ok("bound castelnuovo --d 10 --n 1 --N 4"), "M=3 ε=0 bound=9");
    assert_eq!(ok("harris-search --n 2 --max 12"), "9,10,11,12");
    assert_eq!(ok("harris-search --n 2 --max 8"), "none");
    assert_eq!(ok("bundle surjects 1,1 2"), "true");
    assert_eq!(ok("bundle surjects 5,9,11,15 13,13,14"), "false");
    assert_eq!(ok("bundle surjects -2,-1 -1"), "true");
    assert_eq!(ok("cohom --twists 0,0,3 --a 0 --b -1"), "h^0=0 h^1=0 h^2=0 h^3=0");
    assert_eq!(ok("cohom --twists 0,0,3 --a 1 --b 0"), "h^0=6 h^1=0 h^2=0 h^3=0");
    assert_eq!(ok("cohom --twists 0,0,3 --a -3 --b 1"), "h^0=0 h^1=0 h^2=0 h^3=1");
    assert_eq!(ok("chow eval --a 3 --b 2 X*C"), "H^2*F\ndegree=1");
    assert_eq!(ok("chow eval --a 3 --b 2 CX*PL*X"), "0\ndegree=0");
    assert_eq!(ok("chow eval --a 3 F*F"), "0\ndegree=0");
    assert_eq!(ok("scroll normal-bundle 1,3,4 --select 0"), "O(-2) + O(-3)");

    let witness = ok("bundle surjects 5,9,11,15 12,13,15 --witness --verify");
    assert!(witness.starts_with("true\n[ x0^7  x1^3"));
    assert!(witness.ends_with("full_rank=true"));
}

#[test]
fn roth_report_example() {
    let text = ok("roth report --a 3 --b 2 --verify");
    for line in ["d=7", "sectional_genus=3", "cx_top_power=80", "cx_dot_l=0"] {
        assert!(text.lines().any(|l| l == line), "missing {line}");
    }
    let checks: Vec<&str> = text.lines().filter(|l| l.starts_with("check ")).collect();
    assert!(checks.len() >= 8);
    assert!(checks.iter().all(|l| l.contains(": PASS")));
}

#[test]
fn json_for_every_subcommand() {
    let cases = [
        "scroll info 0,0,2,3",
        "scroll degenerates 2,2 1,3",
        "scroll section 5,9,11,15",
        "scroll normal-bundle 1,2,3 --select 1",
        "bundle surjects 5,9,11,15 12,13,15 --witness --verify",
        "bundle surjects 1,2 1,3",
        "roth report --a 3 --b 2 --verify",
        "roth report --a 1,2 --b 4",
        "chow eval --a 3 --b 2 CX*PL*X",
        "chow eval --a 3 H+F",
        "cohom --twists 0,0,3 --a -4 --b 2",
        "bound castelnuovo --d 10 --n 1 --N 4",
        "harris-search --n 3 --max 20",
    ];
    for c in cases {
        let v = json(c);
        assert!(v.is_object(), "{c}");
        assert!(v.get("error").is_none(), "{c}");
    }
    let v = json("scroll section 5,9,11,15");
    assert_eq!(v["section"], serde_json::json!([12, 13, 15]));
    let v = json("roth report --a 3 --b 2 --verify");
    assert_eq!(v["report"]["sectional_genus"], 3);
    assert_eq!(v["report"]["cx_top_power"], 80);
    assert_eq!(v["verification"]["all_passed"], true);
    let v = json("cohom --twists 0,0,3 --a 1 --b 0");
    assert_eq!(v["h"], serde_json::json!([6, 0, 0, 0]));
    let v = json("chow eval --a 3 --b 2 X*C");
    assert_eq!(v["degree"], 1);
    assert_eq!(v["terms"], serde_json::json!([{ "h": 2, "f": 1, "coeff": 1 }]));
    let v = json("bound castelnuovo --d 10 --n 1 --N 4");
    assert_eq!((v["m"].clone(), v["epsilon"].clone(), v["bound"].clone()), (3.into(), 0.into(), 9.into()));
    let v = json("bundle surjects 1,2 1,3");
    assert_eq!(v["surjects"], false);
    assert!(v["witness"].is_null());
}

#[test]
fn big_values_stay_exact() {
    let v = json("roth report --a 4,4,4,4 --b 1000");
    let top = &v["report"]["cx_top_power"];
    assert!(top.is_string());
    let text = ok("roth report --a 4,4,4,4 --b 1000");
    assert!(text.lines().any(|l| l == format!("cx_top_power={}", top.as_str().unwrap())));
}

#[test]
fn exit_codes() {
    for args in [
        "",
        "scroll",
        "scroll info",
        "scroll info 1,x",
        "scroll info 1,,2",
        "bundle surjects 1,2",
        "roth report --a 3",
        "cohom --twists 1,1 --a one --b 0",
        "bound castelnuovo --d 10 --n 1",
        "frobnicate",
    ] {
        let out = roth(args);
        assert_eq!(out.code, EXIT_USAGE, "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    for args in [
        "scroll info 0,-1",
        "scroll info 0,0",
        "scroll section 0,3",
        "scroll section 4",
        "scroll normal-bundle 1,2 --select 5",
        "roth report --a 1 --b 2",
        "roth report --a 3 --b 0",
        "chow eval --a 3 H^",
        "chow eval --a 3 X*C",
        "chow eval --a 3 Q",
        "cohom --twists 3 --a 0 --b 0",
        "bound castelnuovo --d 10 --n 4 --N 4",
        "harris-search --n 1 --max 10",
    ] {
        let out = roth(args);
        assert_eq!(out.code, EXIT_DOMAIN, "{args:?}: {}", out.stdout);
        assert!(out.stderr.starts_with("error: "), "{args:?}");
        let v = json(args);
        assert_eq!(v["error"]["kind"], "domain", "{args:?}");
    }
    assert_eq!(json("scroll info 1,x")["error"]["kind"], "usage");
    assert_eq!(roth("--help").code, EXIT_OK);
}

fn class_and_degree(a: &[i64], b: i64, expr: &str) -> (String, Value) {
    let a = a.iter().join(",");
    let out = run(["roth", "--json", "chow", "eval", "--a", &a, "--b", &b.to_string(), expr]);
    assert_eq!(out.code, EXIT_OK, "{expr}: {}", out.stderr);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    (v["class"].as_str().unwrap().to_string(), v["degree"].clone())
}

fn p(x: i64) -> String {
    format!("({x})")
}

/// Every step of a chain normalises to the same class; returns its degree.
fn chain(a: &[i64], b: i64, steps: &[String]) -> Value {
    let first = class_and_degree(a, b, &steps[0]);
    for s in &steps[1..] {
        assert_eq!(class_and_degree(a, b, s), first, "a={a:?} b={b}: {s}");
    }
    first.1
}

fn roth_sweep() -> Vec<(Vec<i64>, i64)> {
    (2..=4usize)
        .flat_map(|n| (1..=3i64).combinations_with_replacement(n - 1))
        .filter(|a| a.iter().sum::<i64>() >= 2)
        .flat_map(|a| (1..=4).map(move |b| (a.clone(), b)))
        .collect()
}

#[test]
fn double_point_divisor_meets_lines_trivially() {
    for (a, b) in roth_sweep() {
        let n = a.len() as i64 + 1;
        let ds: i64 = a.iter().sum();
        let d = b * ds + 1;
        let h = |e: i64| format!("H^{e}");
        let steps = [
            format!("({}*H-K-X)*PL*X", p(d - n - 2)),
            format!(
                "({}*H-({}*H+{}*F)-({}*H+F))*({}-{}*{}*F)*({}*H+F)",
                p(d - n - 2),
                p(-(n + 1)),
                p(ds - 2),
                p(b),
                h(n - 1),
                p(ds),
                h(n - 2),
                p(b)
            ),
            format!(
                "({}*H+{}*F)*({}*{}+{}*{}*F)",
                p(b * (ds - 1)),
                p(1 - ds),
                p(b),
                h(n),
                p(1 - b * ds),
                h(n - 1)
            ),
            format!(
                "{}*{}+{}*{}*F+{}*{}*F",
                p(b * b * (ds - 1)),
                h(n + 1),
                p(b * (ds - 1) * (1 - b * ds)),
                h(n),
                p(b * (1 - ds)),
                h(n)
            ),
        ];
        assert_eq!(chain(&a, b, &steps), 0);
        // the two factors as printed
        let cx = class_and_degree(&a, b, "CX").0;
        assert_eq!(cx, class_and_degree(&a, b, &format!("{}*H+{}*F", p(b * (ds - 1)), p(1 - ds))).0);
        let curve = class_and_degree(&a, b, "PL*X").0;
        let printed = format!("{}*{}+{}*{}*F", p(b), h(n), p(1 - b * ds), h(n - 1));
        assert_eq!(curve, class_and_degree(&a, b, &printed).0);
    }
}

#[test]
fn sectional_genus_chain() {
    for (a, b) in roth_sweep() {
        let n = a.len() as i64 + 1;
        let ds: i64 = a.iter().sum();
        let h = |e: i64| format!("H^{e}");
        let steps = [
            format!("(K+X)*X*{}+{}*{}*X", h(n - 1), p(n - 1), h(n)),
            format!(
                "(({}*H+{}*F)+({}*H+F))*({}*H+F)*{}+{}*{}*({}*H+F)",
                p(-(n + 1)),
                p(ds - 2),
                p(b),
                p(b),
                h(n - 1),
                p(n - 1),
                h(n),
                p(b)
            ),
            format!(
                "({}*H+{}*F)*({}*{}+{}*F)+{}*({}*{}+{}*F)",
                p(b - (n + 1)),
                p(ds - 1),
                p(b),
                h(n),
                h(n - 1),
                p(n - 1),
                p(b),
                h(n + 1),
                h(n)
            ),
            format!(
                "{}*{}+{}*{}*F",
                p((b - (n + 1)) * b + (n - 1) * b),
                h(n + 1),
                p((b - (n + 1)) + (ds - 1) * b + (n - 1)),
                h(n)
            ),
        ];
        assert_eq!(chain(&a, b, &steps), b * b * ds - b * ds - 2);
    }
}

#[test]
fn double_point_self_intersection_chain() {
    for (a, b) in roth_sweep() {
        let n = a.len() as i64 + 1;
        let ds: i64 = a.iter().sum();
        let d = b * ds + 1;
        let h = |e: i64| format!("H^{e}");
        let steps = [
            format!("({}*H-(K+X))^{n}*X", p(d - n - 2)),
            format!(
                "({}*H-({}*H+{}*F+{}*H+F))^{n}*({}*H+F)",
                p(d - n - 2),
                p(-(n + 1)),
                p(ds - 2),
                p(b),
                p(b)
            ),
            format!("({}*H-{}*F)^{n}*({}*H+F)", p(d - b - 1), p(ds - 1), p(b)),
            format!(
                "{}^{}*({}*{}-{}*{}*F)*({}*H+F)",
                p(d - b - 1),
                n - 1,
                p(d - b - 1),
                h(n),
                p(n * (ds - 1)),
                h(n - 1),
                p(b)
            ),
        ];
        let degree = chain(&a, b, &steps);
        let next = (d - b - 1).pow(n as u32 - 1) * ((d - b - 1) * b * ds + (d - b - 1) - n * b * (ds - 1));
        assert_eq!(degree, next);
        assert_eq!(degree, (d - b - 1).pow(n as u32) * (d - n));
    }
}
