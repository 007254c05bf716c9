use cli_harness::{Format, GroupChoice, HarnessError, RunConfig, Suite};

#[test]
fn parses_a_config_file_on_top_of_defaults() {
    let cfg = RunConfig::parse(
        "# cocycle sweep\n\
         suite = cocycles\n\
         p = 0, 1   # orders\n\
         K = 30\n\
         Lambda = 2\n\
         group = su3\n\
         tol.cocycle.closedness = 1e-8\n\
         \n\
         format = csv\n",
    )
    .unwrap();
    assert_eq!(cfg.suite, Suite::Cocycles);
    assert_eq!(cfg.p, vec![0, 1]);
    assert_eq!(cfg.window, 30);
    assert_eq!(cfg.window_for(1), 60);
    assert_eq!(cfg.bandwidth, 2);
    assert_eq!(cfg.group, GroupChoice::Su3);
    assert_eq!(cfg.format, Format::Csv);
    assert_eq!(cfg.tolerance("cocycle.closedness", 1e-10), 1e-8);
    assert_eq!(cfg.tolerance("cocycle.two_routes", 1e-9), 1e-9);
    assert_eq!(cfg.samples, RunConfig::default().samples);
}

#[test]
fn reports_the_offending_line_and_key() {
    let err = RunConfig::parse("seed = 1\nthis line has no equals\n").unwrap_err();
    assert!(matches!(err, HarnessError::Syntax { line: 2, .. }), "{err}");

    let err = RunConfig::parse("colour = red").unwrap_err();
    assert!(matches!(err, HarnessError::UnknownKey(ref k) if k == "colour"));

    let err = RunConfig::parse("window = twelve").unwrap_err();
    assert!(matches!(err, HarnessError::BadValue { ref key, .. } if key == "window"));

    let err = RunConfig::parse("q = ,").unwrap_err();
    assert!(matches!(err, HarnessError::BadValue { .. }));

    let err = RunConfig::parse("tol.wzw.car = -1").unwrap_err();
    assert!(matches!(err, HarnessError::BadValue { .. }));

    assert!(matches!(
        RunConfig::parse("suite = everything").unwrap_err(),
        HarnessError::UnknownSuite(_)
    ));
    assert!(matches!(
        RunConfig::parse("format = xml").unwrap_err(),
        HarnessError::BadValue { .. }
    ));
}

#[test]
fn suite_names_round_trip() {
    for suite in [Suite::All].into_iter().chain(Suite::SINGLE) {
        assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
    }
    assert_eq!(Suite::All.members().len(), 5);
    assert_eq!(Suite::Wzw.members(), vec![Suite::Wzw]);
}

#[test]
fn budgets_are_refused_before_running() {
    let refuse = |text: &str| match RunConfig::parse(text).unwrap().validate() {
        Err(HarnessError::Budget(msg)) => msg,
        other => panic!("{text:?} gave {other:?}"),
    };
    // p = 1 at Lambda = 2 needs K >= 14.
    let msg = refuse("suite = cocycles\np = 0, 1\nbandwidth = 2\nwindow = 13");
    assert!(msg.contains("14"), "{msg}");
    refuse("suite = cocycles\nsamples = 0");
    refuse("suite = wzw\nnf = 2\nlevel = 2");
    refuse("suite = dressed\nnf = 2\ndressed_level = 1");
    refuse("suite = spectral-triple\nq = 0.5, 1.5");
    refuse("suite = schatten\nschatten_p = 0, 1");
    refuse("suite = all\nbandwidth = 0");

    // Budgets of suites that are not run do not matter.
    RunConfig::parse("suite = schatten\nwindow = 1\nnf = 1")
        .unwrap()
        .validate()
        .unwrap();
    RunConfig::parse("suite = cocycles\np = 0, 1\nbandwidth = 2\nwindow = 14")
        .unwrap()
        .validate()
        .unwrap();
}
