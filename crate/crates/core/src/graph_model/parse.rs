use super::{GraphError, Ultragraph};

/// Parses a built-in family name such as `rose:3`, `ladder`, `ladder:4`,
/// `renewal` or `union(rose:3,ladder)`.
pub fn parse_builtin(spec: &str) -> Result<Ultragraph, GraphError> {
    let spec = spec.trim();
    for head in ["union(", "disjoint_union("] {
        if let Some(rest) = spec.strip_prefix(head) {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| GraphError::InvalidParameters(format!("unbalanced parentheses in {spec:?}")))?;
            let parts = split_top_level(inner)?
                .into_iter()
                .map(parse_builtin)
                .collect::<Result<Vec<_>, _>>()?;
            return Ultragraph::disjoint_union(&parts);
        }
    }
    let (name, param) = match spec.split_once(':') {
        Some((n, p)) => {
            let v: usize = p
                .trim()
                .parse()
                .map_err(|_| GraphError::InvalidParameters(format!("bad parameter {p:?} for {n}")))?;
            (n.trim(), Some(v))
        }
        None => (spec, None),
    };
    let need = |p: Option<usize>| p.ok_or_else(|| GraphError::InvalidParameters(format!("{name} needs a parameter")));
    let none = |p: Option<usize>| match p {
        Some(_) => Err(GraphError::InvalidParameters(format!("{name} takes no parameter"))),
        None => Ok(()),
    };
    match name {
        "rose" => Ultragraph::rose(need(param)?),
        "cycle" => Ultragraph::cycle(need(param)?),
        "golden_mean" => none(param).map(|_| Ultragraph::golden_mean()),
        "ladder" => match param {
            Some(m) => Ultragraph::ladder_finite(m),
            None => Ok(Ultragraph::ladder()),
        },
        "double_chain" => none(param).map(|_| Ultragraph::double_chain()),
        "renewal" => none(param).map(|_| Ultragraph::renewal()),
        "roses" => none(param).map(|_| Ultragraph::increasing_roses()),
        other => Err(GraphError::UnknownFamily(other.to_string())),
    }
}

fn split_top_level(s: &str) -> Result<Vec<&str>, GraphError> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(GraphError::InvalidParameters(format!("unbalanced parentheses in {s:?}")));
        }
    }
    parts.push(&s[start..]);
    Ok(parts)
}
