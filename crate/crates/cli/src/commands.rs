use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use qwalk::combinatorics::{deviation_check, quads_by_recurrence};
use qwalk::qmeasure::{
    complement_phase_terms, complement_rowsum_breakdown, within_convergence_bound,
};
use qwalk::{io, Dyadic, Event, Suite, VerificationReport, VerifyConfig};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{
    Common, ComplementArgs, ExportArgs, ExportObject, Format, Mode, MuArgs, Route, SequenceName,
    SumsArgs, TableArgs, VerifyArgs,
};
use crate::output::{self, csv, decimal, emit, exact_and_decimal, text_table};

fn quad_cells(q: &qwalk::SequenceQuad) -> Vec<String> {
    vec![
        q.n.to_string(),
        q.s.to_string(),
        q.t.to_string(),
        q.u.to_string(),
        q.v.to_string(),
        q.reference().to_string(),
    ]
}

fn quad_json(q: &qwalk::SequenceQuad) -> Value {
    json!({
        "n": q.n,
        "s": q.s.to_string(),
        "t": q.t.to_string(),
        "u": q.u.to_string(),
        "v": q.v.to_string(),
        "reference": q.reference().to_string(),
    })
}

/// Rows `min_n..=max_n` from the closed form, each checked against the
/// coupled recurrences and against `s + t + u + v = 2^n`.
fn checked_quads(
    min_n: u64,
    max_n: u64,
) -> Result<std::result::Result<Vec<qwalk::SequenceQuad>, String>> {
    if min_n == 0 || max_n < min_n {
        bail!("need 1 <= min-n <= max-n, got {min_n}..{max_n}");
    }
    let by_recurrence = quads_by_recurrence(max_n);
    let mut rows = Vec::new();
    let mut diff = String::new();
    for rec in by_recurrence.into_iter().skip(min_n as usize - 1) {
        let closed = qwalk::quad_closed_form(rec.n)?;
        if closed != rec {
            diff.push_str(&format!(
                "n={}: closed form ({}) != recurrence ({})\n",
                rec.n,
                quad_cells(&closed)[1..5].join(","),
                quad_cells(&rec)[1..5].join(","),
            ));
        }
        if closed.total() != num_bigint::BigUint::from(1u8) << rec.n {
            diff.push_str(&format!(
                "n={}: s+t+u+v = {} != 2^{}\n",
                rec.n,
                closed.total(),
                rec.n
            ));
        }
        rows.push(closed);
    }
    Ok(if diff.is_empty() { Ok(rows) } else { Err(diff) })
}

const TABLE_COLUMNS: [&str; 6] = ["n", "s", "t", "u", "v", "2^(n-2)"];

pub fn table(common: &Common, a: &TableArgs) -> Result<ExitCode> {
    let rows = match checked_quads(1, a.max_n)? {
        Ok(rows) => rows,
        Err(diff) => {
            eprint!("cross-check failed:\n{diff}");
            return Ok(ExitCode::FAILURE);
        }
    };
    let text = match common.format {
        Format::Csv => io::write_table_csv(&rows),
        Format::Json => output::json(&rows.iter().map(quad_json).collect::<Vec<_>>())?,
        Format::Text => {
            let cells: Vec<_> = rows.iter().map(quad_cells).collect();
            text_table(&TABLE_COLUMNS, &cells)
        }
    };
    emit(common.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn build_event(a: &MuArgs) -> Result<Event> {
    let event = if let Some(indices) = &a.indices {
        let level = a.level.context("--indices needs --level")?;
        Event::from_indices(level, indices.iter().copied())?
    } else if let Some(mask) = &a.mask {
        let level = a.level.context("--mask needs --level")?;
        Event::from_hex_mask(level, mask)?
    } else if let Some(literal) = &a.cyl {
        let prefix = qwalk::parse_path(literal).with_context(|| {
            format!("bad path literal {literal:?}; a literal of k+1 symbols gives a level-k path")
        })?;
        if let Some(level) = a.level {
            if level != prefix.level() {
                bail!(
                    "--level {level} conflicts with the level-{} literal {literal:?}",
                    prefix.level()
                );
            }
        }
        qwalk::CylinderEvent::elementary(prefix)?.base().clone()
    } else {
        bail!("give an event with --indices, --mask or --cyl");
    };
    match a.refine {
        Some(m) => Ok(qwalk::refine(&qwalk::CylinderEvent::new(event), m)?
            .base()
            .clone()),
        None => Ok(event),
    }
}

pub fn mu(common: &Common, a: &MuArgs) -> Result<ExitCode> {
    let event = build_event(a)?;
    let mut values: Vec<(&str, Dyadic)> = Vec::new();
    if matches!(a.route, Route::Fast | Route::Both) {
        values.push(("fast", qwalk::mu_fast(&event)));
    }
    if matches!(a.route, Route::Pairsum | Route::Both) {
        values.push(("pairsum", qwalk::mu_pairsum(&event)?));
    }
    let agree = values.windows(2).all(|w| w[0].1 == w[1].1);
    let (level, size) = (event.level(), event.len());

    let text = match common.format {
        Format::Csv => {
            let rows: Vec<_> = values
                .iter()
                .map(|(r, v)| {
                    vec![
                        level.to_string(),
                        size.to_string(),
                        r.to_string(),
                        v.to_string(),
                        decimal(v),
                    ]
                })
                .collect();
            csv(&["level", "size", "route", "mu", "decimal"], &rows)
        }
        Format::Json => {
            let routes: serde_json::Map<String, Value> = values
                .iter()
                .map(|(r, v)| {
                    (
                        r.to_string(),
                        json!({"mu": v.to_string(), "decimal": decimal(v)}),
                    )
                })
                .collect();
            output::json(&json!({"level": level, "size": size, "routes": routes, "agree": agree}))?
        }
        Format::Text => {
            let mut s = format!("level {level}, {size} path(s)\n");
            for (r, v) in &values {
                s.push_str(&format!("mu[{r}] = {}\n", exact_and_decimal(v)));
            }
            if values.len() > 1 {
                s.push_str(if agree {
                    "routes agree\n"
                } else {
                    "ROUTES DISAGREE\n"
                });
            }
            s
        }
    };
    emit(common.out.as_deref(), &text)?;
    if !agree {
        eprintln!("error: routes disagree");
        return Ok(ExitCode::FAILURE);
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ComplementRow {
    n: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rowsum: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    phase_sum: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    terms: Option<Vec<i8>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    brute: Option<String>,
    agree: bool,
    mu: String,
    decimal: String,
    deviation: String,
    within_bound: bool,
}

fn format_terms(terms: &[i8]) -> String {
    let mut s = String::new();
    for (i, t) in terms.iter().enumerate() {
        match (i, *t > 0) {
            (0, true) => s.push('1'),
            (0, false) => s.push_str("-1"),
            (_, true) => s.push_str(" + 1"),
            (_, false) => s.push_str(" - 1"),
        }
    }
    s
}

pub fn complement(common: &Common, a: &ComplementArgs) -> Result<ExitCode> {
    if a.max_n == 0 {
        bail!("--max-n must be at least 1");
    }
    let use_closed = matches!(a.mode, Mode::Closed | Mode::All);
    let use_rowsum = matches!(a.mode, Mode::Rowsum | Mode::All);
    let use_brute = matches!(a.mode, Mode::Brute | Mode::All);

    let mut rows = Vec::with_capacity(a.max_n as usize);
    for n in 1..=a.max_n {
        let mut values = Vec::new();
        let closed = if use_closed {
            Some(qwalk::mu_complement_closed(n)?)
        } else {
            None
        };
        values.extend(closed.clone());
        let breakdown = if use_rowsum {
            Some(complement_rowsum_breakdown(n)?)
        } else {
            None
        };
        values.extend(breakdown.as_ref().map(|b| b.value.clone()));
        let brute = if use_brute {
            Some(qwalk::mu_fast(&qwalk::complement_event(n)?))
        } else {
            None
        };
        values.extend(brute.clone());
        let terms = if a.show_terms && use_rowsum {
            Some(complement_phase_terms(n)?)
        } else {
            None
        };

        let mu = values[0].clone();
        let deviation = &mu - &Dyadic::one();
        rows.push(ComplementRow {
            n,
            closed: closed.map(|d| d.to_string()),
            rowsum: breakdown.as_ref().map(|b| b.value.to_string()),
            phase_sum: breakdown.map(|b| b.phase_sum),
            terms,
            brute: brute.map(|d| d.to_string()),
            agree: values.iter().all(|v| *v == mu),
            decimal: decimal(&mu),
            within_bound: within_convergence_bound(n, &deviation),
            deviation: deviation.to_string(),
            mu: mu.to_string(),
        });
    }

    let mut header = vec!["n"];
    if use_closed {
        header.push("closed");
    }
    if use_rowsum {
        header.extend(["rowsum", "phase_sum"]);
    }
    if use_brute {
        header.push("brute");
    }
    header.extend(["agree", "mu-1", "decimal", "within_bound"]);
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let mut c = vec![r.n.to_string()];
            c.extend(r.closed.clone());
            c.extend(r.rowsum.clone());
            c.extend(r.phase_sum.map(|p| p.to_string()));
            c.extend(r.brute.clone());
            c.extend([
                r.agree.to_string(),
                r.deviation.clone(),
                r.decimal.clone(),
                r.within_bound.to_string(),
            ]);
            c
        })
        .collect();

    let text = match common.format {
        Format::Csv => csv(&header, &cells),
        Format::Json => output::json(&rows)?,
        Format::Text => {
            let mut s = text_table(&header, &cells);
            for r in &rows {
                if let (Some(terms), Some(sum)) = (&r.terms, r.phase_sum) {
                    s.push_str(&format!(
                        "n={} phase sum: {} = {sum}\n",
                        r.n,
                        format_terms(terms)
                    ));
                }
            }
            s
        }
    };
    emit(common.out.as_deref(), &text)?;
    if rows.iter().any(|r| !r.agree || !r.within_bound) {
        eprintln!("error: routes disagree or the convergence bound fails");
        return Ok(ExitCode::FAILURE);
    }
    Ok(ExitCode::SUCCESS)
}

fn selected_suites(names: &[String]) -> Result<Vec<Suite>> {
    if names.is_empty() {
        return Ok(Suite::ALL.to_vec());
    }
    let mut suites = names
        .iter()
        .map(|n| n.parse::<Suite>().map_err(|e| anyhow!(e)))
        .collect::<Result<Vec<_>>>()?;
    let rank = |s: &Suite| Suite::ALL.iter().position(|x| x == s);
    suites.sort_by_key(rank);
    suites.dedup();
    Ok(suites)
}

pub fn verify(common: &Common, a: &VerifyArgs) -> Result<ExitCode> {
    let suites = selected_suites(&a.suites)?;
    let cfg = VerifyConfig {
        seed: a.seed,
        max_n: a.max_n,
        samples: a.samples,
    };
    let reports: Vec<VerificationReport> = suites
        .into_iter()
        .map(|s| {
            let mut r = qwalk::run_suite(s, &cfg);
            if !a.timing {
                r.elapsed_ms = None;
            }
            r
        })
        .collect();
    let all_passed = reports.iter().all(VerificationReport::passed);

    let text = match common.format {
        Format::Json => output::json(&json!({
            "seed": a.seed,
            "passed": all_passed,
            "reports": reports,
        }))?,
        Format::Csv => {
            let mut header = vec!["suite", "seed", "cases", "failures", "passed"];
            if a.timing {
                header.push("elapsed_ms");
            }
            let rows: Vec<_> = reports
                .iter()
                .map(|r| {
                    let mut c = vec![
                        r.suite.clone(),
                        r.seed.to_string(),
                        r.cases.to_string(),
                        r.failure_count.to_string(),
                        r.passed().to_string(),
                    ];
                    c.extend(r.elapsed_ms.map(|t| t.to_string()));
                    c
                })
                .collect();
            csv(&header, &rows)
        }
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                let status = if r.passed() { "PASS" } else { "FAIL" };
                s.push_str(&format!(
                    "{status} {:<12} cases={} failures={}",
                    r.suite, r.cases, r.failure_count
                ));
                if let Some(ms) = r.elapsed_ms {
                    s.push_str(&format!(" time={ms}ms"));
                }
                s.push('\n');
                for f in &r.failures {
                    s.push_str(&format!(
                        "  {}: inputs {} expected {} actual {}\n",
                        f.case, f.inputs, f.expected, f.actual
                    ));
                }
            }
            s.push_str(&format!(
                "seed {:#x}: {}\n",
                a.seed,
                if all_passed {
                    "all suites passed"
                } else {
                    "FAILURES"
                }
            ));
            s
        }
    };
    emit(common.out.as_deref(), &text)?;
    Ok(if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

pub fn sums(common: &Common, a: &SumsArgs) -> Result<ExitCode> {
    let n = a.n;
    if n == 0 {
        bail!("--n must be at least 1");
    }
    let mod4: Vec<String> = (0..4)
        .map(|j| qwalk::binom_sum_mod4(n, j).to_string())
        .collect();
    let mod2: Vec<String> = (0..2)
        .map(|p| qwalk::spaced_sum_mod2(n, p).to_string())
        .collect();
    let (re, im) = qwalk::alternating_sums(n);
    let reference = Dyadic::pow2_signed(n as i64 - 2);
    let tight: Vec<bool> = (0..4)
        .map(|j| deviation_check(n, &qwalk::binom_sum_mod4(n, j)).tight)
        .collect();

    let mut entries: Vec<(String, String)> = Vec::new();
    for (j, v) in mod4.iter().enumerate() {
        entries.push((format!("sum_k C(n,k), k = {j} mod 4"), v.clone()));
    }
    for (p, v) in mod2.iter().enumerate() {
        entries.push((format!("sum_k C(n,k), k = {p} mod 2"), v.clone()));
    }
    entries.push(("Re (1+i)^n".into(), re.to_string()));
    entries.push(("Im (1+i)^n".into(), im.to_string()));
    entries.push(("2^(n-2)".into(), reference.to_string()));

    let text = match common.format {
        Format::Json => output::json(&json!({
            "n": n,
            "mod4": mod4,
            "mod2": mod2,
            "re_1pi_pow_n": re.to_string(),
            "im_1pi_pow_n": im.to_string(),
            "reference": reference.to_string(),
            "deviation_tight": tight,
        }))?,
        Format::Csv => {
            let rows: Vec<_> = entries
                .iter()
                .map(|(k, v)| vec![n.to_string(), format!("\"{k}\""), v.clone()])
                .collect();
            csv(&["n", "quantity", "value"], &rows)
        }
        Format::Text => {
            let mut s = format!("n = {n}\n");
            let width = entries.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in &entries {
                s.push_str(&format!("{k:<width$}  {v}\n"));
            }
            s
        }
    };
    emit(common.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

pub fn export(common: &Common, a: &ExportArgs) -> Result<ExitCode> {
    let level = || a.level.context("this export needs --level");
    let text = match a.object {
        ExportObject::Dmatrix => {
            let m = qwalk::decoherence_matrix(level()?)?;
            match common.format {
                Format::Json => output::json(&json!({
                    "level": m.level(),
                    "scale_exponent": m.scale_exponent(),
                    "signs": (0..m.dim()).map(|j| m.row(j).to_vec()).collect::<Vec<_>>(),
                }))?,
                Format::Csv | Format::Text => io::write_matrix(&m),
            }
        }
        ExportObject::Zvec | ExportObject::Yvec => {
            let n = level()?;
            let v = if a.object == ExportObject::Zvec {
                qwalk::z_vector(n)?
            } else {
                qwalk::y_vector(n)?
            };
            match common.format {
                Format::Csv => io::write_count_vector_csv(&v),
                Format::Json => output::json(&json!({"level": v.level(), "values": v.values()}))?,
                Format::Text => {
                    let vals: Vec<String> = v.values().iter().map(u8::to_string).collect();
                    format!("({})\n", vals.join(","))
                }
            }
        }
        ExportObject::Quad => {
            let rows = match checked_quads(a.min_n, a.max_n)? {
                Ok(rows) => rows,
                Err(diff) => {
                    eprint!("cross-check failed:\n{diff}");
                    return Ok(ExitCode::FAILURE);
                }
            };
            match common.format {
                Format::Csv => io::write_table_csv(&rows),
                Format::Json => output::json(&rows.iter().map(quad_json).collect::<Vec<_>>())?,
                Format::Text => {
                    let j = match a.sequence {
                        SequenceName::S => 0,
                        SequenceName::T => 1,
                        SequenceName::U => 2,
                        SequenceName::V => 3,
                    };
                    io::write_bfile(rows.iter().map(|q| (q.n, &q[j])))
                }
            }
        }
        ExportObject::MuComplement => {
            if a.min_n == 0 || a.max_n < a.min_n {
                bail!("need 1 <= min-n <= max-n, got {}..{}", a.min_n, a.max_n);
            }
            let max = u32::try_from(a.max_n).context("--max-n too large")?;
            let records = (a.min_n as u32..=max)
                .map(|n| {
                    let mu = qwalk::mu_complement_closed(n)?;
                    Ok(io::ComplementRecord {
                        n,
                        decimal: decimal(&mu),
                        mu,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            match common.format {
                Format::Csv => io::write_complement_csv(&records),
                Format::Json => output::json(&records)?,
                Format::Text => {
                    let cells: Vec<_> = records
                        .iter()
                        .map(|r| vec![r.n.to_string(), r.mu.to_string(), r.decimal.clone()])
                        .collect();
                    text_table(&["n", "mu", "decimal"], &cells)
                }
            }
        }
    };
    emit(common.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}
