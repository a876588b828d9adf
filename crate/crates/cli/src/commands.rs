//! Command implementations. Each returns both renderings of the result; the
//! binary picks one by `--json`. All output built here is deterministic:
//! canonical orders come from the core library and JSON objects serialize
//! with sorted keys.

use std::path::Path;

use cobord::charclass::{all_sw_numbers, sw_total, wu_classes, TotalClass};
use cobord::cobordism::{
    self, are_cobordant, bordism_of_space_dim, classify_with_table, is_null_cobordant,
    nondyadic_partitions, DegreeTable,
};
use cobord::manifolds::ManifoldModel;
use cobord::steenrod::{adem_reduce, admissible_basis};

use crate::cache;
use crate::expr::{eval, parse_manifold};
use crate::failure::Failure;
use crate::steenrod_text::parse_steenrod;

/// Ceiling for `omega`, `basis`, `adem` and `bordism-dim` degree inputs.
const MAX_DEGREE_INPUT: u32 = 64;
/// Hard ceiling for `--max-dim`.
const MAX_CLASSIFY_DIM: u32 = 12;

#[derive(Debug)]
pub struct CommandOutput {
    pub text: String,
    pub json: serde_json::Value,
}

fn parse_and_eval(src: &str) -> Result<(String, ManifoldModel), Failure> {
    let ast = parse_manifold(src)?;
    let model = eval(&ast)?;
    Ok((ast.to_string(), model))
}

fn total_class_lines(
    model: &ManifoldModel,
    symbol: &str,
    class_of: impl Fn(&cobord::manifolds::ConnectedModel) -> Result<TotalClass, Failure>,
) -> Result<(String, serde_json::Value), Failure> {
    let mut lines = Vec::new();
    let mut components = Vec::new();
    let many = model.components().len() > 1;
    for (idx, comp) in model.components().iter().enumerate() {
        let class = class_of(comp)?;
        let rendered = class.format(comp.ring());
        if many {
            lines.push(format!("component {}: {symbol} = {rendered}", idx + 1));
        } else {
            lines.push(format!("{symbol} = {rendered}"));
        }
        components.push(serde_json::json!({
            "dimension": comp.dimension(),
            "euler": comp.euler(),
            "ring": serde_json::to_value(comp.ring()).expect("presentation serializes"),
            "fundamental": comp.fundamental().exponents(),
            "classes": class.to_json(comp.ring()),
        }));
    }
    Ok((lines.join("\n"), serde_json::json!(components)))
}

pub fn sw(src: &str) -> Result<CommandOutput, Failure> {
    let (echo, model) = parse_and_eval(src)?;
    let (text, components) = total_class_lines(&model, "w", |c| Ok(sw_total(c)?))?;
    Ok(CommandOutput {
        text,
        json: serde_json::json!({
            "command": "sw",
            "expr": echo,
            "components": components,
        }),
    })
}

pub fn wu(src: &str) -> Result<CommandOutput, Failure> {
    let (echo, model) = parse_and_eval(src)?;
    let (text, components) = total_class_lines(&model, "nu", |c| Ok(wu_classes(c)?))?;
    Ok(CommandOutput {
        text,
        json: serde_json::json!({
            "command": "wu",
            "expr": echo,
            "components": components,
        }),
    })
}

pub fn numbers(src: &str) -> Result<CommandOutput, Failure> {
    let (echo, model) = parse_and_eval(src)?;
    let vector = all_sw_numbers(&model)?;
    let text = vector
        .entries()
        .iter()
        .map(|(p, v)| format!("{p} = {}", u8::from(*v)))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(CommandOutput {
        text,
        json: serde_json::json!({
            "command": "numbers",
            "expr": echo,
            "vector": vector.to_json(),
        }),
    })
}

pub fn null(src: &str) -> Result<CommandOutput, Failure> {
    let (echo, model) = parse_and_eval(src)?;
    let bounds = is_null_cobordant(&model)?;
    Ok(CommandOutput {
        text: if bounds { "yes" } else { "no" }.into(),
        json: serde_json::json!({
            "command": "null",
            "expr": echo,
            "null_cobordant": bounds,
        }),
    })
}

pub fn cobordant(left_src: &str, right_src: &str) -> Result<CommandOutput, Failure> {
    let (left_echo, left) = parse_and_eval(left_src)?;
    let (right_echo, right) = parse_and_eval(right_src)?;
    let same = are_cobordant(&left, &right)?;
    Ok(CommandOutput {
        text: if same { "yes" } else { "no" }.into(),
        json: serde_json::json!({
            "command": "cobordant",
            "left": left_echo,
            "right": right_echo,
            "cobordant": same,
        }),
    })
}

pub fn classify(
    src: &str,
    max_dim: Option<u32>,
    cache_dir: Option<&Path>,
) -> Result<CommandOutput, Failure> {
    let ceiling = max_dim.unwrap_or(cobordism::DEFAULT_MAX_DIM);
    if ceiling == 0 || ceiling > MAX_CLASSIFY_DIM {
        return Err(Failure::Semantic(format!(
            "--max-dim must be between 1 and {MAX_CLASSIFY_DIM}"
        )));
    }
    let (echo, model) = parse_and_eval(src)?;
    let dim = model.dimension();
    if dim == 0 {
        return Err(Failure::Semantic(
            "classification needs dimension >= 1".into(),
        ));
    }
    if dim > ceiling {
        return Err(Failure::from(cobord::Error::UnsupportedDimension {
            dim,
            max: ceiling,
        }));
    }
    let table: DegreeTable = match cache_dir {
        Some(dir) => cache::load_or_compute_table(dim, dir)?,
        None => DegreeTable::compute(dim)?,
    };
    let class = classify_with_table(&model, &table)?;
    Ok(CommandOutput {
        text: class.to_string(),
        json: serde_json::json!({
            "command": "classify",
            "expr": echo,
            "class": class.to_json(),
            "pretty": class.to_string(),
        }),
    })
}

pub fn omega(n: u32) -> Result<CommandOutput, Failure> {
    check_degree(n)?;
    let partitions = nondyadic_partitions(n);
    let listed = if partitions.is_empty() {
        "(none)".to_string()
    } else {
        partitions
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    Ok(CommandOutput {
        text: format!(
            "dim \u{3a9}_{n} = {}; nondyadic partitions: {listed}",
            partitions.len()
        ),
        json: serde_json::json!({
            "command": "omega",
            "n": n,
            "dim": partitions.len(),
            "partitions": partitions.iter().map(|p| p.parts()).collect::<Vec<_>>(),
        }),
    })
}

pub fn basis(n: u32) -> Result<CommandOutput, Failure> {
    check_degree(n)?;
    let basis = admissible_basis(n);
    let text = basis
        .iter()
        .map(|m| m.to_string())
        .collect::<Vec<_>>()
        .join(", ");
    Ok(CommandOutput {
        text,
        json: serde_json::json!({
            "command": "basis",
            "degree": n,
            "basis": basis.iter().map(|m| m.exponents()).collect::<Vec<_>>(),
        }),
    })
}

pub fn adem(word_src: &str) -> Result<CommandOutput, Failure> {
    let element = parse_steenrod(word_src)?;
    let reduced = adem_reduce(&element);
    Ok(CommandOutput {
        text: reduced.to_string(),
        json: serde_json::json!({
            "command": "adem",
            "input": word_src,
            "element": reduced.to_json(),
            "pretty": reduced.to_string(),
        }),
    })
}

pub fn bordism_dim(betti: &[u64], degree: u32) -> Result<CommandOutput, Failure> {
    check_degree(degree)?;
    if betti.is_empty() {
        return Err(Failure::Semantic(
            "--betti needs at least one entry (b0)".into(),
        ));
    }
    let dim = bordism_of_space_dim(betti, degree);
    Ok(CommandOutput {
        text: format!("dim = {dim}"),
        json: serde_json::json!({
            "command": "bordism-dim",
            "betti": betti,
            "degree": degree,
            "dim": dim,
        }),
    })
}

fn check_degree(n: u32) -> Result<(), Failure> {
    if n > MAX_DEGREE_INPUT {
        return Err(Failure::Semantic(format!(
            "degree {n} exceeds the supported maximum {MAX_DEGREE_INPUT}"
        )));
    }
    Ok(())
}
