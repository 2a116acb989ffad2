//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any fails.
//!
//!     cargo test -p universal-pddl --test acceptance

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use universal_pddl::encoders::{
    compile, compile_tm, encode_adl, encode_chain, encode_param, encode_tm, infer_bounds,
    param_domain, report_bounds, universal_adl_domain, CONTROL_PREDICATES, TM_BOUNDS,
};
use universal_pddl::equivalence::{
    check_compiled_round_trip, check_encoding, check_original_round_trip, fuzz_task, reground,
    EncodingCheck, ENCODINGS,
};
use universal_pddl::exec::{bfs_plan, random_task, reachable_states};
use universal_pddl::grounder::ground;
use universal_pddl::model::{Bounds, Encoding, GroundTask, Plan};
use universal_pddl::parser::{parse_domain, parse_domain_with_diagnostics, parse_machine, parse_problem, print_domain};

const MAX_STATES: usize = 1_000_000;

fn data(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(rel)
}

fn read(rel: &str) -> String {
    fs::read_to_string(data(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

/// Plans collected for the round-trip criterion.
struct Sample {
    label: String,
    original: GroundTask,
    check: EncodingCheck,
    original_plan: Option<Plan>,
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn reference_fidelity() -> Outcome {
    let adl_ref = parse_domain(&read("reference/universal-adl.pddl")).map_err(|e| format!("reference adl: {e}"))?;
    let (chain_ref, diags) = parse_domain_with_diagnostics(&read("reference/universal-chain-verbatim.pddl"))
        .map_err(|e| format!("reference chain: {e}"))?;
    let param_ref = parse_domain(&read("reference/parameterised-3-2-1.pddl")).map_err(|e| format!("reference param: {e}"))?;
    ensure(diags.len() == 1, || format!("expected one diagnostic for the verbatim chain domain, got {diags:?}"))?;
    ensure(chain_ref.schemata.len() == 10, || "verbatim chain domain should have 10 schemata".into())?;
    ensure(adl_ref == universal_adl_domain(), || "parsed ADL reference differs from the built-in domain".into())?;

    let golden = read("golden/universal-adl.pddl");
    let emitted = encode_adl(&GroundTask::default()).map_err(|e| e.to_string())?.domain_text();
    ensure(emitted == golden, || "emitted ADL domain differs from the golden file".into())?;

    let t = GroundTask::default();
    let param = encode_param(&t, Some(Bounds::new(3, 2, 1))).map_err(|e| e.to_string())?;
    let reparsed = parse_domain(&param.domain_text()).map_err(|e| e.to_string())?;
    ensure(reparsed == param_ref, || format!("D(3,2,1) differs from the reference:\n{}", print_domain(&reparsed)))?;
    ensure(param.domain == param_domain(Bounds::new(3, 2, 1)), || "param domain not canonical".into())?;
    Ok("reference domains parse; ADL golden equal; D(3,2,1) equals reference".into())
}

fn sussman(samples: &mut Vec<Sample>) -> Outcome {
    let d = parse_domain(&read("sussman-domain.pddl")).map_err(|e| e.to_string())?;
    let p = parse_problem(&read("sussman-problem.pddl")).map_err(|e| e.to_string())?;
    let (t, _) = ground(&d, &p).map_err(|e| e.to_string())?;

    let verbatim = parse_problem(&read("reference/sussman-upd-verbatim.pddl")).map_err(|e| e.to_string())?;
    let of_type = |ty: &str| -> BTreeSet<String> {
        verbatim.objects.iter().filter(|(_, t)| t.as_str() == ty).map(|(o, _)| o.to_string()).collect()
    };
    let props: BTreeSet<String> = t.props.iter().map(|p| p.to_string()).collect();
    let actions: BTreeSet<String> = t.actions.iter().map(|a| a.name.to_string()).collect();
    ensure(props.len() == 16 && props == of_type("proposition"), || format!("propositions {props:?}"))?;
    ensure(actions.len() == 18 && actions == of_type("action"), || format!("actions {actions:?}"))?;

    let upd = parse_problem(&read("sussman-upd.pddl")).map_err(|e| e.to_string())?;
    let ours = encode_adl(&t).map_err(|e| e.to_string())?.problem;
    ensure(ours.init == upd.init, || "task compiled to ADL differs from the corrected instance".into())?;

    let base = bfs_plan(&t, 100_000);
    let optimum = base.plan().ok_or("original Sussman has no plan")?.clone();
    let mut lengths = Vec::new();
    for enc in ENCODINGS {
        let check = check_encoding(&t, enc, 100_000)?;
        let plan = check.plan.clone().ok_or_else(|| format!("{enc}: no plan"))?;
        ensure(check.states < 100_000, || format!("{enc}: {} states", check.states))?;
        if enc == Encoding::Adl {
            ensure(plan.len() == optimum.len(), || format!("ADL optimum {} vs original {}", plan.len(), optimum.len()))?;
        }
        lengths.push(format!("{enc}={}", plan.len()));
        samples.push(Sample { label: format!("sussman/{enc}"), original: t.clone(), check, original_plan: Some(optimum.clone()) });
    }
    ensure(optimum.len() == 6, || format!("original optimum {}", optimum.len()))?;
    Ok(format!("16 props, 18 actions; optimal lengths original=6 {}", lengths.join(" ")))
}

fn equivalence(samples: &mut Vec<Sample>) -> Outcome {
    let results: Vec<(u64, Result<Vec<Sample>, String>)> = (0..500u64)
        .into_par_iter()
        .map(|seed| {
            let t = fuzz_task(seed, 8);
            let original_plan = bfs_plan(&t, MAX_STATES).plan().cloned();
            let r = ENCODINGS
                .iter()
                .map(|&enc| {
                    check_encoding(&t, enc, MAX_STATES)
                        .map(|check| Sample {
                            label: format!("seed {seed}/{enc}"),
                            original: t.clone(),
                            check,
                            original_plan: original_plan.clone(),
                        })
                        .map_err(|e| format!("seed {seed} {enc}: {e}"))
                })
                .collect();
            (seed, r)
        })
        .collect();
    let mut bad = Vec::new();
    let mut solvable = 0;
    for (_, r) in results {
        match r {
            Ok(s) => {
                solvable += s[0].check.plan.is_some() as usize;
                samples.extend(s);
            }
            Err(e) => bad.push(e),
        }
    }
    ensure(bad.is_empty(), || format!("{} discrepancies, first: {}", bad.len(), bad[0]))?;
    Ok(format!("500 tasks ({solvable} solvable) x 3 encodings, 0 discrepancies"))
}

fn chain_control() -> Outcome {
    let mut states = 0;
    let mut dead_ends = 0;
    for seed in 0..100u64 {
        let t = random_task(seed, 4, 1 + (seed % 4) as usize, 0.3);
        let c = encode_chain(&t).map_err(|e| e.to_string())?;
        let (compiled, sources) = reground(&c)?;
        let control: BTreeSet<_> = sources
            .props
            .iter()
            .filter(|(_, atom)| CONTROL_PREDICATES.contains(&atom.predicate.as_str()))
            .map(|(name, _)| name)
            .collect();
        let r = reachable_states(&compiled, MAX_STATES).map_err(|_| format!("seed {seed}: state limit"))?;
        for s in &r.states {
            let n = s.true_props.iter().filter(|p| control.contains(p)).count();
            ensure(n == 1, || format!("seed {seed}: state with {n} control facts: {:?}", s.true_props))?;
        }
        states += r.states.len();
        dead_ends += r.dead_ends;
    }
    Ok(format!("100 tasks, {states} reachable states, 0 violations ({dead_ends} dead ends)"))
}

fn turing_machines(samples: &mut Vec<Sample>) -> Outcome {
    let mut files: Vec<_> = fs::read_dir(data("machines"))
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "tm"))
        .collect();
    files.sort();
    ensure(files.len() >= 10, || format!("only {} machines", files.len()))?;
    let (mut accepting, mut rejecting) = (0, 0);
    for f in &files {
        let name = f.file_stem().unwrap().to_string_lossy().to_string();
        let m = parse_machine(&fs::read_to_string(f).unwrap()).map_err(|e| format!("{name}: {e}"))?;
        let t = encode_tm(&m).map_err(|e| format!("{name}: {e}"))?;
        let b = infer_bounds(&t);
        ensure(b.fits_within(&TM_BOUNDS), || format!("{name}: bounds {b}"))?;
        let c = compile_tm(&m).map_err(|e| format!("{name}: {e}"))?;
        let check = check_encoding(&t, Encoding::Tm211, MAX_STATES).map_err(|e| format!("{name}: {e}"))?;
        ensure(check.instance == c, || format!("{name}: tm211 compile paths disagree"))?;
        let accepts = m.accepts();
        ensure(check.plan.is_some() == accepts, || format!("{name}: plan exists {} but accepts {accepts}", check.plan.is_some()))?;
        if accepts {
            accepting += 1;
        } else {
            rejecting += 1;
        }
        let original_plan = bfs_plan(&t, MAX_STATES).plan().cloned();
        samples.push(Sample { label: format!("tm/{name}"), original: t, check, original_plan });
    }
    Ok(format!("{} machines ({accepting} accept, {rejecting} reject), all within (2,1,1), existence = acceptance", files.len()))
}

fn round_trips(samples: &[Sample]) -> Outcome {
    let failures: Vec<String> = samples
        .par_iter()
        .flat_map_iter(|s| {
            let mut out = Vec::new();
            if let Some(p) = &s.check.plan {
                if let Err(e) = check_compiled_round_trip(&s.original, &s.check, p) {
                    out.push(format!("{} (compiled plan): {e}", s.label));
                }
            }
            if let Some(p) = &s.original_plan {
                if let Err(e) = check_original_round_trip(&s.original, &s.check, p) {
                    out.push(format!("{} (original plan): {e}", s.label));
                }
            }
            out
        })
        .collect();
    let plans: usize = samples.iter().map(|s| s.check.plan.is_some() as usize + s.original_plan.is_some() as usize).sum();
    ensure(failures.is_empty(), || format!("{} failures, first: {}", failures.len(), failures[0]))?;
    Ok(format!("{plans} plans, forward/back identity and validity hold"))
}

fn determinism() -> Outcome {
    let build = || -> Result<Vec<String>, String> {
        let d = parse_domain(&read("sussman-domain.pddl")).map_err(|e| e.to_string())?;
        let p = parse_problem(&read("sussman-problem.pddl")).map_err(|e| e.to_string())?;
        let (t, _) = ground(&d, &p).map_err(|e| e.to_string())?;
        let mut tasks = vec![t];
        tasks.extend((0..20).map(|s| random_task(s, 6, 6, 0.3)));
        let mut out = Vec::new();
        for t in &tasks {
            for enc in [Encoding::Adl, Encoding::Chain, Encoding::Param] {
                let c = compile(t, enc, None).map_err(|e| e.to_string())?;
                out.extend([c.domain_text(), c.problem_text(), c.manifest_json()]);
            }
        }
        let m = parse_machine(&read("machines/bit-flipper.tm")).map_err(|e| e.to_string())?;
        let c = compile_tm(&m).map_err(|e| e.to_string())?;
        out.extend([c.domain_text(), c.problem_text(), c.manifest_json()]);
        Ok(out)
    };
    let first = build()?;
    let second = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .map_err(|e| e.to_string())?
        .install(build)?;
    ensure(first == second, || "outputs differ between runs".into())?;
    Ok(format!("{} files byte-identical across two runs", first.len()))
}

fn bounds_report() -> Outcome {
    let d = parse_domain(&read("universal-adl.pddl")).map_err(|e| e.to_string())?;
    let p = parse_problem(&read("sussman-upd.pddl")).map_err(|e| e.to_string())?;
    let text = report_bounds(&d, &p).to_string();
    let first = text.lines().next().unwrap_or("");
    ensure(first == "k=2 m=34 exponent=1156", || format!("got `{first}`"))?;
    Ok(first.to_string())
}

fn main() -> ExitCode {
    let mut samples = Vec::new();
    let mut failed = 0;
    let mut report = |n: usize, title: &str, limit: Option<Duration>, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let late = limit.is_some_and(|l| took > l);
        let (status, detail) = match (&outcome, late) {
            (Ok(msg), false) => ("PASS", msg.clone()),
            (Ok(msg), true) => ("FAIL", format!("{msg}; took {took:.2?}, limit {:?}", limit.unwrap())),
            (Err(msg), _) => ("FAIL", msg.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {n} {title}: {status} [{took:.2?}] {detail}");
    };
    report(1, "reference fidelity", Some(Duration::from_secs(1)), &mut reference_fidelity);
    report(2, "sussman end-to-end", Some(Duration::from_secs(10)), &mut || sussman(&mut samples));
    report(3, "cross-encoding equivalence", Some(Duration::from_secs(300)), &mut || equivalence(&mut samples));
    report(4, "chain control invariant", None, &mut chain_control);
    report(5, "D(2,1,1) witness", Some(Duration::from_secs(30)), &mut || turing_machines(&mut samples));
    report(6, "round-trip laws", None, &mut || round_trips(&samples));
    report(7, "determinism", None, &mut determinism);
    report(8, "bounds report", None, &mut bounds_report);
    if failed == 0 {
        println!("acceptance: all 8 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 8 criteria failed");
        ExitCode::FAILURE
    }
}
