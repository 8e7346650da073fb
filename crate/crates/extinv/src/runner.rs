//! Command dispatch: parse the problem, run the requested computation,
//! assemble the report.

use std::path::{Path, PathBuf};

use crate::algebra::{AlgebraCtx, SignRule};
use crate::arrangement::{intersection_ideal, minimal_generators, seeded_battery};
use crate::battery;
use crate::error::{Error, Result};
use crate::invariant::{fixed_space, molien_series, GeneratorSet};
use crate::pipeline::{
    bound_transference_experiment, check_gansub, noether_check, Method,
};
use crate::problem::ProblemFile;
use crate::rat::format_rat;
use crate::report::{
    ArrangementBatteryReport, ArrangementReport, ExampleOutcome, ExamplesReport, GansubDoc,
    GroupReport, InvariantsReport, MolienReport, NoetherDoc, Report,
};
use crate::text::parse_poly;

#[derive(Clone, Debug)]
pub enum Command {
    Group { problem: PathBuf },
    Invariants { problem: PathBuf, method: Method, cap: Option<usize> },
    Molien { problem: PathBuf, cap: Option<usize> },
    Noether { problem: PathBuf, method: Method, cap: Option<usize> },
    Gansub { problem: PathBuf },
    Arrangement { problem: PathBuf },
    ArrangementBattery { seed: u64, trials: usize },
    Transfer { problem: PathBuf },
    Examples,
}

pub fn run(command: &Command) -> Result<Report> {
    match command {
        Command::Group { problem } => run_group(problem),
        Command::Invariants { problem, method, cap } => run_invariants(problem, *method, *cap),
        Command::Molien { problem, cap } => run_molien(problem, *cap),
        Command::Noether { problem, method, cap } => run_noether(problem, *method, *cap),
        Command::Gansub { problem } => run_gansub(problem),
        Command::Arrangement { problem } => run_arrangement(problem),
        Command::ArrangementBattery { seed, trials } => run_arrangement_battery(*seed, *trials),
        Command::Transfer { problem } => run_transfer(problem),
        Command::Examples => Ok(Report::Examples(run_examples())),
    }
}

fn problem_name(path: &Path) -> String {
    path.display().to_string()
}

fn run_group(path: &Path) -> Result<Report> {
    let problem = ProblemFile::load(path)?;
    let group = problem.build_group()?;
    let element_orders = (0..group.order()).map(|i| group.element_order(i)).collect();
    Ok(Report::Group(GroupReport {
        problem: problem_name(path),
        variables: problem.variables,
        order: group.order(),
        generator_count: group.generator_indices().len(),
        element_orders,
        signed_permutation: group.is_signed_permutation(),
    }))
}

fn rendered(gens: &GeneratorSet) -> Vec<String> {
    gens.gens().iter().map(|(_, g)| g.to_string()).collect()
}

fn run_invariants(path: &Path, method: Method, cap: Option<usize>) -> Result<Report> {
    let problem = ProblemFile::load(path)?;
    let group = problem.build_group()?;
    let ctx = problem.build_ctx(&group, cap)?;
    let report = noether_check(&group, &ctx, method)?;
    Ok(Report::Invariants(InvariantsReport {
        problem: problem_name(path),
        rule: ctx.rule().name().to_string(),
        variables: ctx.n(),
        cap: ctx.cap(),
        method,
        group_order: group.order(),
        generator_degrees: report.generators.degrees(),
        generators: rendered(&report.generators),
        beta: report.beta,
        invariant_dims: report.invariant_dims,
        generated_dims: report.generated_dims,
        dims_match: report.dims_match,
    }))
}

fn run_molien(path: &Path, cap: Option<usize>) -> Result<Report> {
    let problem = ProblemFile::load(path)?;
    let group = problem.build_group()?;
    let ctx = problem.build_ctx(&group, cap)?;
    let coefficients = molien_series(&group, &ctx)?;
    let mut fixed_dims = Vec::with_capacity(ctx.cap() + 1);
    for d in 0..=ctx.cap() {
        fixed_dims.push(fixed_space(&group, &ctx, d)?.dim());
    }
    let agree = coefficients
        .iter()
        .zip(&fixed_dims)
        .all(|(c, &dim)| c == &crate::rat::rat_int(dim as i64));
    Ok(Report::Molien(MolienReport {
        problem: problem_name(path),
        rule: ctx.rule().name().to_string(),
        variables: ctx.n(),
        cap: ctx.cap(),
        group_order: group.order(),
        coefficients: coefficients.iter().map(format_rat).collect(),
        fixed_dims,
        agree,
    }))
}

fn run_noether(path: &Path, method: Method, cap: Option<usize>) -> Result<Report> {
    let problem = ProblemFile::load(path)?;
    let group = problem.build_group()?;
    let ctx = problem.build_ctx(&group, cap)?;
    let report = noether_check(&group, &ctx, method)?;
    Ok(Report::Noether(NoetherDoc {
        problem: problem_name(path),
        rule: ctx.rule().name().to_string(),
        variables: ctx.n(),
        cap: ctx.cap(),
        method,
        group_order: report.group_order,
        bound: report.bound,
        beta: report.beta,
        pass: report.pass,
        asserted: report.asserted,
        generator_degrees: report.generators.degrees(),
        generators: rendered(&report.generators),
        invariant_dims: report.invariant_dims,
        generated_dims: report.generated_dims,
        dims_match: report.dims_match,
    }))
}

fn run_gansub(path: &Path) -> Result<Report> {
    let problem = ProblemFile::load(path)?;
    if problem.sign_rule()? != SignRule::Exterior {
        return Err(Error::UnsupportedRule("gansub needs the exterior rule"));
    }
    let group = problem.build_group()?;
    let ctx = problem.build_ctx(&group, None)?;
    let report = check_gansub(&group, &ctx)?;
    Ok(Report::Gansub(GansubDoc {
        problem: problem_name(path),
        variables: report.variables,
        group_order: report.group_order,
        rows: report.rows,
        all_equal: report.all_equal,
    }))
}

fn run_arrangement(path: &Path) -> Result<Report> {
    let problem = ProblemFile::load(path)?;
    let arrangement = problem.build_arrangement()?;
    let ambient = arrangement.ambient_dim();
    let ctx = AlgebraCtx::exterior(ambient);
    let mut ideal = intersection_ideal(&arrangement, &ctx, ambient)?;
    ideal.set_gens(minimal_generators(&ideal)?);
    let gens = ideal.gens().expect("just set").clone();
    let component_dims = (0..=ambient)
        .map(|d| ideal.component(d).map(|b| b.dim()).unwrap_or(0))
        .collect();
    Ok(Report::Arrangement(ArrangementReport {
        problem: problem_name(path),
        ambient,
        subspace_count: arrangement.len(),
        component_dims,
        generator_degrees: gens.degrees(),
        generators: rendered(&gens),
        max_degree: gens.beta(),
        degree_bound: arrangement.len(),
        within_bound: gens.beta() <= arrangement.len(),
    }))
}

fn run_arrangement_battery(seed: u64, trials: usize) -> Result<Report> {
    let trials = seeded_battery(seed, trials)?;
    let all_within_bound = trials.iter().all(|t| t.within_bound);
    Ok(Report::ArrangementBattery(ArrangementBatteryReport {
        seed,
        trials,
        all_within_bound,
    }))
}

fn run_transfer(path: &Path) -> Result<Report> {
    let problem = ProblemFile::load(path)?;
    let group = problem.build_group()?;
    let dims = problem.experiment_dims()?;
    let report = bound_transference_experiment(&group, dims)?;
    Ok(Report::Transfer(crate::report::TransferDoc {
        problem: problem_name(path),
        group_order: report.group_order,
        w_dim: report.w_dim,
        rows: report.rows,
        max_beta_sym: report.max_beta_sym,
        max_beta_ext: report.max_beta_ext,
        pass: report.pass,
    }))
}

/// Run the four built-in worked examples and check their expected outputs.
pub fn run_examples() -> ExamplesReport {
    let mut examples = Vec::new();

    // swap on two exterior variables: one linear generator, both methods
    examples.push(example("swap", || {
        let group = battery::z2_swap();
        let ctx = AlgebraCtx::exterior(2);
        let mut detail = Vec::new();
        let mut pass = true;
        for method in [Method::Direct, Method::Arrangement] {
            let r = noether_check(&group, &ctx, method)?;
            let got = rendered(&r.generators);
            let ok = got == ["x1 + x2"] && r.beta == 1 && r.pass && r.dims_match;
            pass &= ok;
            detail.push(format!("{method}: gens {got:?}, beta {}", r.beta));
        }
        Ok((pass, detail.join("; ")))
    }));

    // mixed sign action diag(1,-1): the even variable generates
    examples.push(example("sign_line", || {
        let group = battery::z2_sign();
        let ctx = AlgebraCtx::exterior_named(vec!["x".into(), "y".into()])?;
        let mut detail = Vec::new();
        let mut pass = true;
        for method in [Method::Direct, Method::Arrangement] {
            let r = noether_check(&group, &ctx, method)?;
            let got = rendered(&r.generators);
            let ok = got == ["x"] && r.beta == 1 && r.pass && r.dims_match;
            pass &= ok;
            detail.push(format!("{method}: gens {got:?}, beta {}", r.beta));
        }
        Ok((pass, detail.join("; ")))
    }));

    // two copies of the sign representation: quadratic generator, tight bound
    examples.push(example("two_copies", || {
        let group = battery::z2_two_copies();
        let ctx = AlgebraCtx::exterior_named(
            ["x1", "x2", "y1", "y2"].map(String::from).to_vec(),
        )?;
        let r = noether_check(&group, &ctx, Method::Direct)?;
        let got = rendered(&r.generators);
        let dims_ok = r.invariant_dims == [1, 2, 2, 2, 1];
        let gens_ok = got == ["x1", "x2", "y1\u{2227}y2"];
        let ok = dims_ok && gens_ok && r.beta == 2 && r.beta == r.bound && r.dims_match;
        Ok((
            ok,
            format!("dims {:?}, gens {:?}, beta {} = |G|", r.invariant_dims, got, r.beta),
        ))
    }));

    // the skew-rule counterexample: beta exceeds the group order
    examples.push(example("kirkman", || {
        let group = battery::z2_swap();
        let ctx = AlgebraCtx::new(SignRule::SkewMinusOne, vec!["x".into(), "y".into()], 4)?;
        let f1 = parse_poly(&ctx, "x + y")?;
        let f2 = parse_poly(&ctx, "x^2 + y^2")?;
        let square_ok = f1.mul(&f1)? == f2;
        let r = noether_check(&group, &ctx, Method::Direct)?;
        let got = rendered(&r.generators);
        let ok = square_ok && got == ["x + y", "x^3 + y^3"] && r.beta == 3 && !r.pass;
        Ok((
            ok,
            format!(
                "(x + y)^2 = x^2 + y^2: {square_ok}; gens {got:?}; beta {} > |G| = {}",
                r.beta, r.bound
            ),
        ))
    }));

    let all_pass = examples.iter().all(|e| e.pass);
    ExamplesReport { examples, all_pass }
}

fn example(name: &str, body: impl FnOnce() -> Result<(bool, String)>) -> ExampleOutcome {
    match body() {
        Ok((pass, detail)) => ExampleOutcome { name: name.into(), detail, pass },
        Err(e) => ExampleOutcome {
            name: name.into(),
            detail: format!("error: {e}"),
            pass: false,
        },
    }
}
