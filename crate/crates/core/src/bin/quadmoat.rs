//! Command-line front end: prime generation, moat searches, density
//! reports, growth charts and a pipeline benchmark.
//!
//! Exit codes: 0 success, 2 invalid configuration or I/O failure, 3 when a
//! moat search hit its boundary ceiling before validating (partial results
//! are still emitted).

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use quadmoat::{
    density_report, find_moats_up_to, generate_sector_primes, minimum_spanning_edges,
    split_residue_classes, triangulate, ChartSeries, KBound, MoatSearch, PrimeContext, PrimePoint,
    QuadField, SearchConfig, Sector, Sieve, WeightedEdge,
};

#[derive(Parser)]
#[command(
    name = "quadmoat",
    version,
    about = "Prime moats in imaginary quadratic rings of class number one"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, Default, ValueEnum)]
enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate ring primes in the truncated fundamental sector.
    Primes {
        /// Field discriminant parameter; one of -1 -2 -3 -7 -11 -19 -43 -67 -163.
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        /// Truncate the sector at x <= boundary.
        #[arg(long)]
        boundary: i64,
        /// Widen the sector across its symmetry lines by this margin.
        #[arg(long, default_value_t = 0)]
        pad: i64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Also write a scatter plot to this SVG file.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Write output here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Find all moats up to a step bound, growing the sector as needed.
    Moats {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        /// Step bound: a decimal like 4.25, or sqrt:N for k = sqrt(N).
        #[arg(long)]
        k_max: String,
        #[arg(long, default_value_t = 64)]
        initial_boundary: i64,
        #[arg(long, default_value_t = 1 << 20)]
        max_boundary: i64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Also write the final sector's triangulation and spanning tree.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the empirical prime count against the asymptotic density.
    Density {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        /// Count primes of norm up to radius^2.
        #[arg(long)]
        radius: f64,
        /// Additionally bucket split-prime norms by this modulus.
        #[arg(long)]
        classes: Option<u64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Chart farthest reachable distance against step bound, one series
    /// per field.
    Plot {
        /// Repeatable: one series per field.
        #[arg(long, allow_hyphen_values = true, required = true)]
        d: Vec<i64>,
        #[arg(long)]
        k_max: String,
        #[arg(long, default_value_t = 64)]
        initial_boundary: i64,
        #[arg(long, default_value_t = 1 << 20)]
        max_boundary: i64,
        /// SVG output path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Time the Delaunay pipeline against the complete-graph baseline.
    Bench {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        /// Largest sector truncation to measure.
        #[arg(long, default_value_t = 256)]
        boundary: i64,
        /// Skip the quadratic baseline above this many points.
        #[arg(long, default_value_t = 3000)]
        baseline_cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::Primes {
            d,
            boundary,
            pad,
            format,
            svg,
            out,
        } => {
            let field = QuadField::new(d).map_err(|e| e.to_string())?;
            let sector = Sector::new(field, boundary, pad).map_err(|e| e.to_string())?;
            let ctx = PrimeContext::with_sieve_limit(
                field,
                (quadmoat::max_norm_in(&sector) + 1).clamp(1 << 16, Sieve::DEFAULT_LIMIT),
            );
            let pts = generate_sector_primes(&sector, &ctx);
            let echo = format!("primes d={d} boundary={boundary} pad={pad}");
            if let Some(path) = svg {
                write_out(&Some(path), &quadmoat::prime_scatter(field, &pts, &echo))?;
            }
            let text = render_primes(field, &pts, &echo, format);
            write_out(&out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Moats {
            d,
            k_max,
            initial_boundary,
            max_boundary,
            format,
            svg,
            out,
        } => {
            let field = QuadField::new(d).map_err(|e| e.to_string())?;
            let bound: KBound = k_max.parse().map_err(|_| {
                format!("invalid k-max {k_max:?}: use a decimal like 3.5 or sqrt:N")
            })?;
            let config = SearchConfig {
                initial_boundary: initial_boundary.min(max_boundary),
                max_boundary,
            };
            let search =
                find_moats_up_to(field, bound, config).map_err(|e| e.to_string())?;
            let echo = format!(
                "moats d={d} k-max={k_max} initial-boundary={initial_boundary} max-boundary={max_boundary}"
            );
            if let Some(path) = svg {
                write_out(&Some(path), &render_moat_svg(field, &search, bound, &echo))?;
            }
            let text = render_moats(field, &search, &echo, format);
            write_out(&out, &text)?;
            if search.complete {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!(
                    "moat search incomplete: boundary ceiling {} reached at C={}",
                    search.ceiling, search.boundary
                );
                Ok(ExitCode::from(3))
            }
        }
        Cmd::Density {
            d,
            radius,
            classes,
            format,
            out,
        } => {
            let field = QuadField::new(d).map_err(|e| e.to_string())?;
            let report = density_report(field, radius).map_err(|e| e.to_string())?;
            let class_counts = classes.map(|m| {
                let norm_bound = (radius * radius).floor() as u64;
                let ctx = PrimeContext::with_sieve_limit(
                    field,
                    (norm_bound + 1).clamp(1 << 16, Sieve::DEFAULT_LIMIT),
                );
                (m, split_residue_classes(&ctx, norm_bound, m))
            });
            let echo = format!("density d={d} radius={radius}");
            let text = render_density(&report, class_counts.as_ref(), &echo, format);
            write_out(&out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Plot {
            d,
            k_max,
            initial_boundary,
            max_boundary,
            out,
        } => {
            let bound: KBound = k_max.parse().map_err(|_| {
                format!("invalid k-max {k_max:?}: use a decimal like 3.5 or sqrt:N")
            })?;
            let config = SearchConfig {
                initial_boundary: initial_boundary.min(max_boundary),
                max_boundary,
            };
            let mut series = Vec::new();
            let mut incomplete = Vec::new();
            for &di in &d {
                let field = QuadField::new(di).map_err(|e| e.to_string())?;
                let search = find_moats_up_to(field, bound, config).map_err(|e| e.to_string())?;
                if !search.complete {
                    incomplete.push(di);
                }
                series.push(ChartSeries {
                    label: format!("d = {di}"),
                    points: search.records.iter().map(|r| (r.k(), r.distance())).collect(),
                });
            }
            let echo = format!(
                "plot d={:?} k-max={k_max} initial-boundary={initial_boundary} max-boundary={max_boundary}",
                d
            );
            write_out(&Some(out), &quadmoat::moat_chart(&series, &echo))?;
            if incomplete.is_empty() {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("moat search incomplete for d in {incomplete:?}");
                Ok(ExitCode::from(3))
            }
        }
        Cmd::Bench {
            d,
            boundary,
            baseline_cap,
            out,
        } => {
            let field = QuadField::new(d).map_err(|e| e.to_string())?;
            let text = run_bench(field, boundary, baseline_cap)?;
            write_out(&out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn write_out(path: &Option<PathBuf>, content: &str) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn render_primes(field: QuadField, pts: &[PrimePoint], echo: &str, format: Format) -> String {
    let mut s = String::new();
    match format {
        Format::Table => {
            let _ = writeln!(s, "# quadmoat {echo}");
            let _ = writeln!(
                s,
                "{:>8} {:>8} {:>14} {:>12} {:>10} {:>10}  element",
                "a", "b", "norm", "x", "y", "primary"
            );
            for p in pts {
                let (x, y) = p.point.xy(field);
                let _ = writeln!(
                    s,
                    "{:>8} {:>8} {:>14} {:>12.3} {:>10.3} {:>10}  {}",
                    p.element.a,
                    p.element.b,
                    p.norm,
                    x,
                    y,
                    p.primary,
                    field.format_element(p.element)
                );
            }
            let _ = writeln!(s, "# {} primes", pts.len());
        }
        Format::Csv => {
            let _ = writeln!(s, "# quadmoat {echo}");
            let _ = writeln!(s, "a,b,norm,x,y,primary,element");
            for p in pts {
                let (x, y) = p.point.xy(field);
                let _ = writeln!(
                    s,
                    "{},{},{},{:.3},{:.3},{},{}",
                    p.element.a,
                    p.element.b,
                    p.norm,
                    x,
                    y,
                    p.primary,
                    field.format_element(p.element)
                );
            }
        }
        Format::Json => {
            let rows: Vec<_> = pts
                .iter()
                .map(|p| {
                    let (x, y) = p.point.xy(field);
                    json!({
                        "a": p.element.a,
                        "b": p.element.b,
                        "norm": p.norm,
                        "x": x,
                        "y": y,
                        "primary": p.primary,
                        "element": field.format_element(p.element),
                    })
                })
                .collect();
            let doc = json!({
                "command": format!("quadmoat {echo}"),
                "d": field.d(),
                "count": pts.len(),
                "primes": rows,
            });
            s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
        }
    }
    s
}

fn render_moats(field: QuadField, search: &MoatSearch, echo: &str, format: Format) -> String {
    let start = search
        .start
        .map(|e| field.format_element(e))
        .unwrap_or_else(|| "none".into());
    let mut s = String::new();
    match format {
        Format::Table => {
            let _ = writeln!(s, "# quadmoat {echo}");
            let _ = writeln!(
                s,
                "# start={start} boundary={} pad={} complete={}",
                search.boundary, search.pad, search.complete
            );
            let _ = writeln!(
                s,
                "{:>10} {:>8} {:>18} {:>14} {:>12} {:>8} {:>9}",
                "k^2", "k", "farthest", "norm", "distance", "primes", "validated"
            );
            for r in &search.records {
                let _ = writeln!(
                    s,
                    "{:>10} {:>8.3} {:>18} {:>14} {:>12.3} {:>8} {:>9}",
                    r.k_squared,
                    r.k(),
                    field.format_element(r.farthest),
                    r.farthest_norm,
                    r.distance(),
                    r.distinct_primes,
                    r.validated
                );
            }
        }
        Format::Csv => {
            let _ = writeln!(s, "# quadmoat {echo}");
            let _ = writeln!(
                s,
                "# start={start} boundary={} pad={} complete={}",
                search.boundary, search.pad, search.complete
            );
            let _ = writeln!(s, "k_squared,k,farthest,norm,distance,distinct_primes,validated");
            for r in &search.records {
                let _ = writeln!(
                    s,
                    "{},{:.3},{},{},{:.3},{},{}",
                    r.k_squared,
                    r.k(),
                    field.format_element(r.farthest),
                    r.farthest_norm,
                    r.distance(),
                    r.distinct_primes,
                    r.validated
                );
            }
        }
        Format::Json => {
            let rows: Vec<_> = search
                .records
                .iter()
                .map(|r| {
                    json!({
                        "k_squared": r.k_squared,
                        "k": r.k(),
                        "farthest": field.format_element(r.farthest),
                        "farthest_a": r.farthest.a,
                        "farthest_b": r.farthest.b,
                        "norm": r.farthest_norm,
                        "distance": r.distance(),
                        "distinct_primes": r.distinct_primes,
                        "validated": r.validated,
                    })
                })
                .collect();
            let doc = json!({
                "command": format!("quadmoat {echo}"),
                "d": search.d,
                "start": start,
                "boundary": search.boundary,
                "pad": search.pad,
                "complete": search.complete,
                "records": rows,
            });
            s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
        }
    }
    s
}

/// Re-run the final sector to draw its triangulation and spanning tree.
fn render_moat_svg(field: QuadField, search: &MoatSearch, bound: KBound, echo: &str) -> String {
    let sector = Sector::new(field, search.boundary, bound.pad()).expect("search used it");
    let ctx = PrimeContext::with_sieve_limit(
        field,
        (quadmoat::max_norm_in(&sector) + 1).clamp(1 << 16, Sieve::DEFAULT_LIMIT),
    );
    let pts = generate_sector_primes(&sector, &ctx);
    let points: Vec<_> = pts.iter().map(|p| p.point).collect();
    let tri = triangulate(field, &points);
    let tree = minimum_spanning_edges(points.len(), &tri.edges);
    quadmoat::triangulation_figure(field, &points, &tri.edges, &tree, echo)
}

fn render_density(
    report: &quadmoat::DensityReport,
    classes: Option<&(u64, std::collections::BTreeMap<u64, u64>)>,
    echo: &str,
    format: Format,
) -> String {
    let mut s = String::new();
    match format {
        Format::Table => {
            let _ = writeln!(s, "# quadmoat {echo}");
            let _ = writeln!(s, "d                   {:>16}", report.d);
            let _ = writeln!(s, "radius              {:>16.1}", report.radius);
            let _ = writeln!(s, "primes              {:>16}", report.counts.total);
            let _ = writeln!(s, "  degree one        {:>16}", report.counts.degree_one);
            let _ = writeln!(s, "  inert squares     {:>16}", report.counts.inert);
            let _ = writeln!(s, "sector area         {:>16.3}", report.sector_area);
            let _ = writeln!(s, "empirical density   {:>16.8}", report.empirical_density);
            let _ = writeln!(s, "asymptotic density  {:>16.8}", report.asymptotic_density);
            let _ = writeln!(s, "relative error      {:>16.5}", report.relative_error);
            let _ = writeln!(s, "density*pi*ln(R)    {:>16.5}", report.normalized());
            if let Some((m, map)) = classes {
                let _ = writeln!(s, "split norms mod {m}:");
                for (class, n) in map {
                    let _ = writeln!(s, "  {class:>4}  {n:>12}");
                }
            }
        }
        Format::Csv => {
            let _ = writeln!(s, "# quadmoat {echo}");
            let _ = writeln!(
                s,
                "d,radius,primes,degree_one,inert,sector_area,empirical_density,asymptotic_density,relative_error,normalized"
            );
            let _ = writeln!(
                s,
                "{},{:.1},{},{},{},{:.6},{:.8},{:.8},{:.6},{:.6}",
                report.d,
                report.radius,
                report.counts.total,
                report.counts.degree_one,
                report.counts.inert,
                report.sector_area,
                report.empirical_density,
                report.asymptotic_density,
                report.relative_error,
                report.normalized()
            );
            if let Some((m, map)) = classes {
                let _ = writeln!(s, "class_mod_{m},count");
                for (class, n) in map {
                    let _ = writeln!(s, "{class},{n}");
                }
            }
        }
        Format::Json => {
            let mut doc = json!({
                "command": format!("quadmoat {echo}"),
                "d": report.d,
                "radius": report.radius,
                "primes": report.counts.total,
                "degree_one": report.counts.degree_one,
                "inert": report.counts.inert,
                "sector_area": report.sector_area,
                "empirical_density": report.empirical_density,
                "asymptotic_density": report.asymptotic_density,
                "relative_error": report.relative_error,
                "normalized": report.normalized(),
            });
            if let Some((m, map)) = classes {
                let rows: std::collections::BTreeMap<String, u64> =
                    map.iter().map(|(k, v)| (k.to_string(), *v)).collect();
                doc["classes_modulus"] = json!(m);
                doc["classes"] = json!(rows);
            }
            s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
        }
    }
    s
}

fn run_bench(field: QuadField, boundary: i64, baseline_cap: usize) -> Result<String, String> {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "# quadmoat bench d={} boundary={boundary} baseline-cap={baseline_cap}",
        field.d()
    );
    let _ = writeln!(s, "points,boundary,delaunay_ms,complete_ms");
    let mut c = 16i64;
    while c <= boundary {
        let sector = Sector::new(field, c, 0).map_err(|e| e.to_string())?;
        let ctx = PrimeContext::with_sieve_limit(
            field,
            (quadmoat::max_norm_in(&sector) + 1).clamp(1 << 16, Sieve::DEFAULT_LIMIT),
        );
        let pts = generate_sector_primes(&sector, &ctx);
        let points: Vec<_> = pts.iter().map(|p| p.point).collect();
        let n = points.len();
        if n < 2 {
            c *= 2;
            continue;
        }

        let t0 = Instant::now();
        let tri = triangulate(field, &points);
        let fast = minimum_spanning_edges(n, &tri.edges);
        let t_fast = t0.elapsed().as_secs_f64() * 1e3;

        let slow_ms = if n <= baseline_cap {
            let t1 = Instant::now();
            let mut complete: Vec<WeightedEdge> = Vec::with_capacity(n * (n - 1) / 2);
            for i in 0..n {
                for j in (i + 1)..n {
                    complete.push(WeightedEdge {
                        i: i as u32,
                        j: j as u32,
                        w: quadmoat::dist_sq(field, points[i], points[j]),
                    });
                }
            }
            complete.sort_unstable_by_key(|e| (e.w, e.i, e.j));
            let slow = minimum_spanning_edges(n, &complete);
            let t_slow = t1.elapsed().as_secs_f64() * 1e3;
            let wa: Vec<u64> = fast.iter().map(|e| e.w).collect();
            let wb: Vec<u64> = slow.iter().map(|e| e.w).collect();
            if wa != wb {
                return Err(format!(
                    "spanning weight sequences disagree at {n} points (d={})",
                    field.d()
                ));
            }
            format!("{t_slow:.2}")
        } else {
            String::new()
        };
        let _ = writeln!(s, "{n},{c},{t_fast:.2},{slow_ms}");
        c *= 2;
    }
    let _ = writeln!(s, "# spanning weight sequences identical wherever both ran");
    Ok(s)
}
