use std::error::Error;
use std::fs;

use qgvc::evolution::{
    compile_alternate_pair, compile_alternate_term, compile_parallel_faces, compile_plaquette_evolution,
    compile_trotter, AlternateCompiler, CubeWiring, EvolutionParams, TermCompiler, ALT_LOCAL_LABELS,
};
use qgvc::ir::{asap_depth, is_aux_label, resource_report, Circuit, ResourceReport, SegmentedCircuit};
use qgvc::sim::{exact_evolution, ideal_trotter_observable, trotter_series};
use qgvc::su2::build_plaquette_operator;
use qgvc::synthesis::{
    and_verifier, ccr_synthesize, hadamard_eliminate, or_gate, parity_sequence, qudit_toffoli, ucr_synthesize, Axis,
    CcrPlan, ControlSequence, GatingSpec, GatingVariant,
};

use crate::output::{series, Record};
use crate::{AxisArg, CompileArgs, Faces, OutputArgs, Preset, Scope, SimMode, SimulateArgs, Style, SynthKind};

type Res<T> = Result<T, Box<dyn Error>>;

fn write_artifact(out: &OutputArgs, body: &str) -> Res<()> {
    if let Some(path) = &out.out {
        fs::write(path, body).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    Ok(())
}

pub fn build_op(d: usize, out: &OutputArgs) -> Res<String> {
    let op = build_plaquette_operator(d)?;
    write_artifact(out, &op.to_json())?;
    let rec = Record::new()
        .with("d", d)
        .with("classes", op.d4_classes.len())
        .with("terms", op.terms.len())
        .with("entries", op.entry_count());
    Ok(match out.format {
        crate::Format::Text => {
            format!("d={d}: {} D4 classes, {} terms, {} entries\n", op.d4_classes.len(), op.terms.len(), op.entry_count())
        }
        f => rec.render(f),
    })
}

fn circuit_report(name: &str, c: &Circuit, out: &OutputArgs) -> Res<String> {
    write_artifact(out, &c.to_json())?;
    let r = resource_report(c, |_| false);
    Ok(Record::new().with("circuit", name).resources(&r).render(out.format))
}

pub fn synth(kind: SynthKind) -> Res<String> {
    match kind {
        SynthKind::Ucr { d, k, theta, axis, out } => {
            let (d, k) = (d as usize, k as usize);
            let axis = match axis {
                AxisArg::Y => Axis::Y,
                AxisArg::Z => Axis::Z,
            };
            let c = ucr_synthesize(k, d, axis, &vec![theta; d.pow(k as u32)], [0, 1])?;
            circuit_report(&format!("ucr d={d} k={k}"), &c, &out)
        }
        SynthKind::Ccr { preset, theta, out } => {
            let (name, c) = match preset {
                Preset::Eq9 => {
                    let plan = CcrPlan::new(parity_sequence(3))?;
                    ("ccr eq9", plan.circuit(&vec![theta; plan.sequence.len()], Axis::Z, [1, 2], 3)?)
                }
                Preset::Five => {
                    let words = [[0, 0], [0, 2], [1, 1], [2, 0], [2, 2]].iter().map(|w| w.to_vec()).collect();
                    let seq = ControlSequence::new(words, vec![3, 3])?;
                    ("ccr five", ccr_synthesize(&seq, Axis::Z, &[theta; 5], [0, 1], 3)?)
                }
            };
            circuit_report(name, &c, &out)
        }
        SynthKind::Gate { which, out } => {
            let (name, c) = if which.lor3_qutrit {
                ("or3 qutrit".to_string(), or_gate(3, 3, 3, GatingVariant::Or3Qutrit)?)
            } else if which.lor4_qutrit {
                ("or4 qutrit".to_string(), or_gate(4, 3, 3, GatingVariant::OrWide)?)
            } else if let Some(k) = which.land {
                let spec = GatingSpec::standard(vec![3; k], vec![vec![0, 1]; k], 3, GatingVariant::And);
                (format!("and k={k}"), and_verifier(&spec)?)
            } else {
                ("toffoli d=3".to_string(), qudit_toffoli(3)?)
            };
            circuit_report(&name, &c, &out)
        }
    }
}

fn parse_pqrs(s: &str, d: usize) -> Res<[usize; 4]> {
    let digits: Vec<usize> = s.chars().filter_map(|c| c.to_digit(10).map(|v| v as usize)).collect();
    if digits.len() != 4 || s.chars().count() != 4 {
        return Err(format!("--pqrs needs four digits, got {s:?}").into());
    }
    if let Some(&bad) = digits.iter().find(|&&v| v + 1 >= d) {
        return Err(format!("--pqrs digit {bad} needs to be below d-1 = {}", d - 1).into());
    }
    Ok([digits[0], digits[1], digits[2], digits[3]])
}

fn compile_primary(args: &CompileArgs, d: usize, params: &EvolutionParams, cube: &CubeWiring) -> Res<SegmentedCircuit> {
    let tc = TermCompiler::new(d)?.with_gating_outside(args.gating_outside);
    Ok(match (args.scope, args.faces) {
        (Scope::Term, _) => {
            let pqrs = parse_pqrs(&args.pqrs, d)?;
            let term = tc.op.term(pqrs).ok_or("no such term")?;
            tc.term_segmented(term, params.tau())?
        }
        (Scope::Plaquette, Faces::Single) => compile_plaquette_evolution(&tc, params)?,
        (Scope::Plaquette, Faces::Pair) => compile_parallel_faces(&tc, cube, 0, 1, params)?,
        (Scope::TrotterStep, _) => compile_trotter(&tc, cube, params)?,
    })
}

fn compile_alternate(args: &CompileArgs, d: usize, params: &EvolutionParams, cube: &CubeWiring) -> Res<SegmentedCircuit> {
    if args.gating_outside {
        return Err("--gating-outside applies to the primary style only".into());
    }
    let ac = AlternateCompiler::new(d)?;
    Ok(match (args.scope, args.faces) {
        (Scope::Term, _) => {
            let pqrs = parse_pqrs(&args.pqrs, d)?;
            compile_alternate_term(&ac, ac.primary.op.term(pqrs).ok_or("no such term")?, params)?
        }
        (Scope::Plaquette, Faces::Single) => {
            let mut seg = SegmentedCircuit::empty(Circuit::with_labels(&[3; 11], &ALT_LOCAL_LABELS).wires);
            for term in &ac.primary.op.terms {
                seg.append(&compile_alternate_term(&ac, term, params)?);
            }
            seg
        }
        (Scope::Plaquette, Faces::Pair) => compile_alternate_pair(&ac, cube, 0, 1, params)?,
        (Scope::TrotterStep, _) => return Err("the alternate style compiles terms and plaquettes only".into()),
    })
}

pub fn compile(args: &CompileArgs) -> Res<String> {
    let d = args.d as usize;
    let p = &args.params;
    let params = EvolutionParams::new(p.g2, p.t, p.nt as usize)?;
    let cube = CubeWiring::standard();
    let seg = match args.style {
        Style::Primary => compile_primary(args, d, &params, &cube)?,
        Style::Alternate => compile_alternate(args, d, &params, &cube)?,
    };
    let (circuit, report, asap): (Circuit, ResourceReport, usize) = if args.eliminate_h {
        let he = hadamard_eliminate(&seg.circuit);
        let r = resource_report(&he.circuit, is_aux_label);
        let depth = r.depth;
        (he.circuit, r, depth)
    } else {
        let asap = asap_depth(seg.circuit.num_wires(), &seg.circuit.gates);
        (seg.circuit.clone(), seg.report(), asap)
    };
    write_artifact(&args.out, &circuit.to_json())?;
    let scope = match args.scope {
        Scope::Term => format!("term {}", args.pqrs),
        Scope::Plaquette if args.faces == Faces::Pair => "plaquette pair".into(),
        Scope::Plaquette => "plaquette".into(),
        Scope::TrotterStep => format!("trotter-step x{}", p.nt),
    };
    let style = match args.style {
        Style::Primary => "primary",
        Style::Alternate => "alternate",
    };
    Ok(Record::new()
        .with("scope", scope)
        .with("style", style)
        .with("d", d)
        .resources(&report)
        .with("asap_depth", asap)
        .render(args.out.format))
}

fn time_grid(t0: f64, tmax: f64, dt: f64) -> Res<Vec<f64>> {
    if !(dt > 0.0 && t0 >= 0.0 && tmax >= t0 && tmax.is_finite()) {
        return Err(format!("need 0 <= t0 <= tmax and dt > 0, got t0={t0} tmax={tmax} dt={dt}").into());
    }
    let n = ((tmax - t0) / dt + 1e-9).floor() as usize + 1;
    // rounded so repeated additions do not leak into the printed times
    Ok((0..n).map(|i| ((t0 + i as f64 * dt) * 1e12).round() / 1e12).collect())
}

pub fn simulate(args: &SimulateArgs) -> Res<String> {
    let d = args.d as usize;
    let nt = args.nt as usize;
    let times = time_grid(args.t0, args.tmax, args.dt)?;
    let cube = CubeWiring::standard();
    let (label, values) = match args.mode {
        SimMode::Exact => {
            let op = build_plaquette_operator(d)?;
            ("exact".to_string(), exact_evolution(&op, &cube, args.g2, &times)?)
        }
        SimMode::Trotter if args.ideal => {
            let op = build_plaquette_operator(d)?;
            let vals = times
                .iter()
                .map(|&t| ideal_trotter_observable(&op, &cube, &EvolutionParams::new(args.g2, t, nt)?))
                .collect::<qgvc::Result<Vec<f64>>>()?;
            (format!("ideal-trotter N_T={nt}"), vals)
        }
        SimMode::Trotter => {
            EvolutionParams::new(args.g2, args.tmax, nt)?;
            let tc = TermCompiler::new(d)?;
            (format!("trotter N_T={nt}"), trotter_series(&tc, &cube, args.g2, nt, &times)?)
        }
    };
    let body = series(args.out.format, &label, &times, &values);
    if args.out.out.is_some() {
        write_artifact(&args.out, &body)?;
        Ok(format!("{} points written\n", times.len()))
    } else {
        Ok(body)
    }
}
