use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use sset_core::constructions::{
    boundary, boundary_inclusion, coproduct, horn, horn_inclusion, join, nerve, operator_map, product, pushout,
    spine, spine_inclusion, standard_simplex, terminal_map, vertex_map, wide_join, FiniteCategory,
};
use sset_core::hom::{find_embedding, Budget};
use sset_core::{Operator, SimplicialMap, SimplicialSet, Subcomplex};

use crate::parser::{Expr, MapRef, ParseError};

#[derive(Debug)]
pub enum CliError {
    Parse(ParseError),
    Io(String, std::io::Error),
    Core(sset_core::Error),
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(e) => e.fmt(f),
            CliError::Io(path, e) => write!(f, "{path}: {e}"),
            CliError::Core(e) => e.fmt(f),
            CliError::Usage(m) => f.write_str(m),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<sset_core::Error> for CliError {
    fn from(e: sset_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_budget() => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn read_file(path: &str) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_string(), e))
}

pub fn load_set(path: &str) -> CliResult<Arc<SimplicialSet>> {
    Ok(Arc::new(SimplicialSet::from_json_str(&read_file(path)?)?))
}

pub fn load_map(path: &str) -> CliResult<SimplicialMap> {
    Ok(SimplicialMap::from_json_str(&read_file(path)?)?)
}

pub fn eval_str(src: &str, budget: &Budget) -> CliResult<Arc<SimplicialSet>> {
    let e = crate::parser::parse(src)?;
    eval(&e, &mut HashMap::new(), budget)
}

pub fn eval(e: &Expr, env: &mut HashMap<String, Arc<SimplicialSet>>, budget: &Budget) -> CliResult<Arc<SimplicialSet>> {
    Ok(match e {
        Expr::Delta(n) => Arc::new(standard_simplex(*n)),
        Expr::Boundary(n) => Arc::new(boundary(*n)),
        Expr::Horn(n, k) => Arc::new(horn(*n, *k)?),
        Expr::Spine(n) => Arc::new(spine(*n)),
        Expr::Nerve(path) => {
            let c = Arc::new(FiniteCategory::from_json_str(&read_file(path)?)?);
            nerve(&c, c.morphisms().len())?.set().clone()
        }
        Expr::Prod(a, b) => product(&eval(a, env, budget)?, &eval(b, env, budget)?).set().clone(),
        Expr::Join(a, b) => join(&eval(a, env, budget)?, &eval(b, env, budget)?).set().clone(),
        Expr::WideJoin(a, b) => wide_join(&eval(a, env, budget)?, &eval(b, env, budget)?).set().clone(),
        Expr::Coprod(a, b) => coproduct(&eval(a, env, budget)?, &eval(b, env, budget)?).set().clone(),
        Expr::Skel(a, n) => Subcomplex::skeleton(&eval(a, env, budget)?, *n).to_simplicial_set().0,
        Expr::Pushout(f, g) => {
            let f = eval_map(f, env, budget)?;
            let g = eval_map(g, env, budget)?;
            pushout(&f, &g)?.set().clone()
        }
        Expr::Ident(name) => env
            .get(name)
            .cloned()
            .ok_or_else(|| CliError::Usage(format!("unbound identifier '{name}'")))?,
        Expr::Let(name, bound, body) => {
            let v = eval(bound, env, budget)?;
            let prev = env.insert(name.clone(), v);
            let out = eval(body, env, budget);
            match prev {
                Some(p) => env.insert(name.clone(), p),
                None => env.remove(name),
            };
            out?
        }
    })
}

pub fn eval_map(
    m: &MapRef,
    env: &mut HashMap<String, Arc<SimplicialSet>>,
    budget: &Budget,
) -> CliResult<SimplicialMap> {
    Ok(match m {
        MapRef::File(path) => load_map(path)?,
        MapRef::Terminal(e) => terminal_map(&eval(e, env, budget)?),
        MapRef::Vertex(e, v) => vertex_map(&eval(e, env, budget)?, *v)?,
        MapRef::Embed(a, b) => {
            let (a, b) = (eval(a, env, budget)?, eval(b, env, budget)?);
            find_embedding(&a, &b, budget)?.ok_or_else(|| CliError::Usage("no embedding between the two sets".into()))?
        }
        MapRef::HornIncl(n, k) => horn_inclusion(*n, *k)?,
        MapRef::BoundaryIncl(n) => boundary_inclusion(*n),
        MapRef::SpineIncl(n) => spine_inclusion(*n),
        MapRef::FaceIncl(n, i) => {
            if *n == 0 {
                return Err(CliError::Usage("faceincl needs n ≥ 1".into()));
            }
            operator_map(&Operator::face(*n - 1, *i)?)
        }
    })
}
