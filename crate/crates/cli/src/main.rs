mod args;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Map, Value};

use covers::algebra::{identify_in_a, leading_asymptotic, LaurentPolyX, DEFAULT_SLACK};
use covers::cayley::{dendrology_m_via_stirling, distance_histogram_with_limit, m_from_histogram, p_from_histogram};
use covers::gravity::{
    b_constants, free_energy_coeffs, h_tau_series_default, painleve_solve, tau_bracket, TauSpec, DEFAULT_TAU_SLACK,
};
use covers::hseries::{fit_phi_from_oracle, h1_empty_series, h_series, default_window, DEFAULT_PHI_SLACK};
use covers::hurwitz::{hurwitz_connected_with, hurwitz_disconnected, CoveringSpec, Partition};
use covers::{Error, Rational, Result, TruncatedSeries};

use args::{Cli, Command};
use output::{Mode, Table};

/// A named series: an element of the algebra where possible.
enum Named {
    Element(LaurentPolyX),
    Series(fn(usize) -> TruncatedSeries),
}

fn named(name: &str) -> Result<Named> {
    let (base, power) = match name.split_once('^') {
        Some((b, k)) => {
            let k: i64 = k.trim().parse().map_err(|_| Error::domain(format!("bad power in {name:?}")))?;
            (b.trim(), Some(k))
        }
        None => (name.trim(), None),
    };
    let element = match base {
        "Y" => LaurentPolyX::y(),
        "Z" => LaurentPolyX::z(),
        "X" => LaurentPolyX::x_pow(1),
        "Xinv" => LaurentPolyX::x_pow(-1),
        // Σ A_n q^n / n! = Z^2
        "A" if power.is_none() => LaurentPolyX::z().pow(2)?,
        // Σ n^{n-2} q^n / n! = Y - Y^2/2
        "cayley" if power.is_none() => &LaurentPolyX::y() - &LaurentPolyX::y().pow(2)?.scale(&Rational::new(1.into(), 2.into())),
        "h1" if power.is_none() => return Ok(Named::Series(h1_empty_series)),
        _ => return Err(Error::domain(format!("unknown series {name:?}; expected Y, Z, X, Xinv, A, cayley or h1"))),
    };
    Ok(Named::Element(match power {
        Some(k) => element.pow(k)?,
        None => element,
    }))
}

fn element_arg(name: Option<&str>, element: Option<&str>) -> Result<Named> {
    match (name, element) {
        (Some(n), _) => named(n),
        (None, Some(e)) => Ok(Named::Element(LaurentPolyX::parse(e)?)),
        (None, None) => Err(Error::domain("give --name or --element")),
    }
}

fn partitions(mus: &[String]) -> Result<Vec<Partition>> {
    mus.iter().map(|m| Partition::parse(m)).collect()
}

fn coefficient_map(series: &TruncatedSeries) -> Value {
    let map: Map<String, Value> = series
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(n, c)| (n.to_string(), Value::String(c.to_string())))
        .collect();
    Value::Object(map)
}

fn series_table(series: &TruncatedSeries) -> Table {
    let mut t = Table::new(vec!["n", "coefficient"]);
    for (n, c) in series.coeffs().iter().enumerate() {
        t.push(vec![Some(n.to_string()), Some(c.to_string())]);
    }
    t
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn scalar(mode: Mode, key: &str, value: String, extra: Value) -> String {
    match mode {
        Mode::Plain => value + "\n",
        Mode::Csv => format!("{key}\n{value}\n"),
        Mode::Json => {
            let mut obj = match extra {
                Value::Object(m) => m,
                _ => Map::new(),
            };
            obj.insert(key.to_string(), Value::String(value));
            Value::Object(obj).to_string() + "\n"
        }
    }
}

fn run(command: Command) -> Result<String> {
    Ok(match command {
        Command::Series { name, element, order, format } => {
            let series = match element_arg(name.as_deref(), element.as_deref())? {
                Named::Element(e) => e.to_series(order),
                Named::Series(f) => f(order),
            };
            match Mode::from(format) {
                Mode::Json => coefficient_map(&series).to_string() + "\n",
                mode => series_table(&series).render(mode),
            }
        }
        Command::Identify { name, coeffs, order, jmin, jmax, slack, format } => {
            let series = match (name, coeffs) {
                (Some(n), _) => match named(&n)? {
                    Named::Element(e) => e.to_series(order),
                    Named::Series(f) => f(order),
                },
                (None, Some(c)) => TruncatedSeries::from_coeffs(
                    c.split(',')
                        .map(|t| covers::rational::parse(t.trim()))
                        .collect::<Result<Vec<_>>>()?,
                )?,
                (None, None) => return Err(Error::domain("give --name or --coeffs")),
            };
            let id = identify_in_a(&series, jmin, jmax, slack)?;
            match Mode::from(format) {
                Mode::Json => {
                    json!({"element": to_json(&id.element), "verified_orders": id.verified_orders}).to_string() + "\n"
                }
                Mode::Csv => {
                    let mut t = Table::new(vec!["j", "coefficient"]);
                    for (j, c) in id.element.terms() {
                        t.push(vec![Some(j.to_string()), Some(c.to_string())]);
                    }
                    t.render(Mode::Csv)
                }
                Mode::Plain => format!("{}\nverified orders: {}\n", id.element, id.verified_orders),
            }
        }
        Command::Asymptotic { name, element, format } => {
            let Named::Element(e) = element_arg(name.as_deref(), element.as_deref())? else {
                return Err(Error::domain("that series is not an element of the algebra"));
            };
            let a = leading_asymptotic(&e)?;
            match Mode::from(format) {
                Mode::Json => to_json(&a).to_string() + "\n",
                Mode::Csv => format!(
                    "constant,radical,gamma2\n{},{},{}\n",
                    a.constant.value,
                    a.constant.radical.as_str(),
                    a.gamma2
                ),
                Mode::Plain => format!("{} * e^n * n^({}/2 - 1)\n", a.constant, a.gamma2),
            }
        }
        Command::Cayley { n, k, limit, format } => {
            let mut t = Table::new(vec!["n", "k", "m", "p"]);
            for nv in 1..=n {
                let hist = distance_histogram_with_limit(nv, limit)?;
                for kv in 1..=k {
                    let m = m_from_histogram(&hist, kv);
                    debug_assert_eq!(m, dendrology_m_via_stirling(nv, kv).unwrap_or(m.clone()));
                    t.push(vec![
                        Some(nv.to_string()),
                        Some(kv.to_string()),
                        Some(m.to_string()),
                        Some(p_from_histogram(&hist, kv).to_string()),
                    ]);
                }
            }
            let mode = match Mode::from(format) {
                Mode::Plain => Mode::Csv,
                m => m,
            };
            t.render(mode)
        }
        Command::Hurwitz { g, n, mu, disconnected, max_nodes, format } => {
            let spec = CoveringSpec::new(g, n, partitions(&mu)?)?;
            let mode = Mode::from(format);
            if disconnected {
                let v = hurwitz_disconnected(&spec)?;
                scalar(mode, "value", v.to_string(), json!({"c": spec.c(), "connected": false}))
            } else {
                let o = hurwitz_connected_with(&spec, max_nodes)?;
                match mode {
                    Mode::Json => to_json(&o).to_string() + "\n",
                    Mode::Csv => format!("value,tuples,marking_weight,c\n{},{},{},{}\n", o.value, o.tuples, o.marking_weight, o.c),
                    Mode::Plain => format!("{}\n", o.value),
                }
            }
        }
        Command::Hseries { g, mu, order, fit_phi, max_nodes, format } => {
            let mus = partitions(&mu)?;
            let window = default_window(g, &mus);
            let order = order.unwrap_or((window.1 - window.0) as usize + DEFAULT_SLACK);
            let h = h_series(g, &mus, order, window, max_nodes)?;
            let phi = if fit_phi {
                let [single] = mus.as_slice() else {
                    return Err(Error::domain("--fit-phi needs exactly one --mu"));
                };
                Some(fit_phi_from_oracle(g, single, DEFAULT_PHI_SLACK, max_nodes)?)
            } else {
                None
            };
            let identification = match &h.identification {
                Ok(id) => json!({"element": to_json(&id.element), "verified_orders": id.verified_orders}),
                Err(e) => json!({"error": e.to_string()}),
            };
            match Mode::from(format) {
                Mode::Json => json!({
                    "coefficients": coefficient_map(&h.series),
                    "laurent_identification": identification,
                    "phi": phi.as_ref().map(|f| to_json(&f.phi)),
                })
                .to_string()
                    + "\n",
                mode => {
                    let mut out = series_table(&h.series).render(mode);
                    if mode == Mode::Plain {
                        match &h.identification {
                            Ok(id) => out.push_str(&format!("element: {} (verified orders: {})\n", id.element, id.verified_orders)),
                            Err(e) => out.push_str(&format!("not identified: {e}\n")),
                        }
                        if let Some(f) = &phi {
                            let cs: Vec<String> = f.phi.poly().coeffs().iter().map(|c| c.to_string()).collect();
                            out.push_str(&format!("phi: [{}] (surplus {})\n", cs.join(", "), f.surplus));
                        }
                    }
                    out
                }
            }
        }
        Command::Tau { g, d, series, max_nodes, format } => {
            let spec = TauSpec::parse(g, &d)?;
            let bracket = tau_bracket(&spec, max_nodes)?;
            let mode = Mode::from(format);
            let mut extra = json!({"spec": spec.to_string(), "dimension_ok": spec.dimension_ok()});
            let mut plain_tail = String::new();
            if series {
                let s = h_tau_series_default(&spec, DEFAULT_TAU_SLACK, max_nodes)?;
                extra["element"] = to_json(&s.element);
                extra["verified_orders"] = json!(s.verified_orders);
                plain_tail = format!("series: {} (verified orders: {})\n", s.element, s.verified_orders);
            }
            scalar(mode, "bracket", bracket.to_string(), extra) + if mode == Mode::Plain { &plain_tail } else { "" }
        }
        Command::Painleve { gmax, format } => {
            let sol = painleve_solve(gmax)?;
            let mut t = Table::new(vec!["g", "e_g"]);
            for (g, e) in sol.values() {
                t.push(vec![Some(g.to_string()), Some(e.to_string())]);
            }
            t.render(Mode::from(format))
        }
        Command::Gravity { gmax, format } => {
            let b = b_constants(gmax)?;
            let (e, f) = if gmax >= 2 {
                (painleve_solve(gmax)?.values(), free_energy_coeffs(gmax)?)
            } else {
                (Vec::new(), Vec::new())
            };
            let mut t = Table::new(vec!["g", "e_g", "b_g", "free_energy"]);
            for bg in b {
                let eg = e.iter().find(|(g, _)| *g == bg.g).map(|(_, v)| v.to_string());
                let fg = f.iter().find(|(g, _)| *g == bg.g).map(|(_, v)| v.to_string());
                t.push(vec![Some(bg.g.to_string()), eg, Some(bg.b.to_string()), fg]);
            }
            t.render(Mode::from(format))
        }
    })
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Domain(_) => 2,
        Error::Budget { .. } => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).is_err() {
                return ExitCode::FAILURE;
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
