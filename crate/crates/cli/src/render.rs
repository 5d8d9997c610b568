use qbra_core::advisor::{Report, WeightRow};

pub fn report(r: &Report) -> String {
    let rec = &r.recommendation;
    let mut out = format!("{}\n{}\n", rec.case, rec.message);
    match &r.result.problem_id {
        Some(id) => out.push_str(&format!("\nproblem: {id}")),
        None => out.push_str("\nproblem: none"),
    }
    if let Some(sim) = r.result.similarity {
        out.push_str(&format!(" (cosine {sim:.4})"));
    }
    out.push('\n');
    if let Some(s) = &r.speedup {
        out.push_str(&format!("speedup: {} [{}, {}]\n", s.expr, s.class, s.kind));
    }
    if let Some(note) = &rec.resource_estimate {
        out.push_str(&format!("resources: {note}\n"));
    }
    for study in &rec.case_studies {
        out.push_str(&format!("case study: {} <{}>\n", study.title, study.url));
    }
    if let Some(trace) = &rec.constraint_trace {
        let flags: Vec<String> = (1..=10).map(|i| format!("C{i}={}", if trace.constraints.c(i) { "T" } else { "F" })).collect();
        out.push_str(&format!("constraints: {}\n", flags.join(" ")));
        out.push_str(&format!("fired: {}\n", trace.fired_clause.unwrap_or("none")));
    }
    if let Some(note) = &rec.note {
        out.push_str(&format!("note: {note}\n"));
    }
    out.trim_end().to_string()
}

pub fn weights(rows: &[WeightRow]) -> String {
    let width = rows.iter().map(|r| r.id.len() + 2 * r.depth).max().unwrap_or(0);
    rows.iter()
        .map(|r| {
            let name = format!("{}{}", "  ".repeat(r.depth), r.id);
            let weight = r.weight.map(|w| format!("{w:.6}")).unwrap_or_else(|| "-".into());
            format!("{name:<width$}  Δ={:<3} α={weight}", r.subtree_size)
        })
        .collect::<Vec<_>>()
        .join("\n")
}
