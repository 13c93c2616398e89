use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Simple types with type variables.
///
/// Type variables print as runs of stars (`*`, `**`, ...). `#` is the
/// product and `->` the function space; both associate to the right and
/// `#` binds tighter.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Type {
    Var(Arc<str>),
    Atom(Arc<str>),
    Fun(Arc<Type>, Arc<Type>),
    Prod(Arc<Type>, Arc<Type>),
}

/// A substitution for type variables.
pub type TypeSubst = BTreeMap<Arc<str>, Type>;

impl Type {
    pub fn var(name: &str) -> Type {
        Type::Var(name.into())
    }

    pub fn atom(name: &str) -> Type {
        Type::Atom(name.into())
    }

    pub fn fun(dom: Type, cod: Type) -> Type {
        Type::Fun(Arc::new(dom), Arc::new(cod))
    }

    pub fn prod(left: Type, right: Type) -> Type {
        Type::Prod(Arc::new(left), Arc::new(right))
    }

    /// Truth values.
    pub fn tr() -> Type {
        Type::atom("tr")
    }

    /// The one-element type of the dummy argument `()`.
    pub fn void() -> Type {
        Type::atom("void")
    }

    pub fn dest_fun(&self) -> Option<(&Type, &Type)> {
        match self {
            Type::Fun(d, c) => Some((d, c)),
            _ => None,
        }
    }

    pub fn dest_prod(&self) -> Option<(&Type, &Type)> {
        match self {
            Type::Prod(l, r) => Some((l, r)),
            _ => None,
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Type::Var(_))
    }

    /// Type variables in order of first occurrence.
    pub fn type_vars(&self, out: &mut Vec<Arc<str>>) {
        match self {
            Type::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Type::Atom(_) => {}
            Type::Fun(a, b) | Type::Prod(a, b) => {
                a.type_vars(out);
                b.type_vars(out);
            }
        }
    }

    pub fn occurs(&self, name: &str) -> bool {
        match self {
            Type::Var(v) => &**v == name,
            Type::Atom(_) => false,
            Type::Fun(a, b) | Type::Prod(a, b) => a.occurs(name) || b.occurs(name),
        }
    }

    pub fn subst(&self, theta: &TypeSubst) -> Type {
        if theta.is_empty() {
            return self.clone();
        }
        match self {
            Type::Var(v) => theta.get(v).cloned().unwrap_or_else(|| self.clone()),
            Type::Atom(_) => self.clone(),
            Type::Fun(a, b) => Type::fun(a.subst(theta), b.subst(theta)),
            Type::Prod(a, b) => Type::prod(a.subst(theta), b.subst(theta)),
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        match self {
            Type::Var(v) | Type::Atom(v) => write!(f, "{v}"),
            Type::Fun(a, b) => {
                if prec > 0 {
                    write!(f, "(")?;
                }
                a.fmt_prec(f, 1)?;
                write!(f, " -> ")?;
                b.fmt_prec(f, 0)?;
                if prec > 0 {
                    write!(f, ")")?;
                }
                Ok(())
            }
            Type::Prod(a, b) => {
                if prec > 1 {
                    write!(f, "(")?;
                }
                a.fmt_prec(f, 2)?;
                write!(f, " # ")?;
                b.fmt_prec(f, 1)?;
                if prec > 1 {
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

/// Name of the n-th (zero based) canonical type variable: `*`, `**`, ...
pub fn star_name(n: usize) -> String {
    "*".repeat(n + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printing_precedence() {
        let t = Type::fun(
            Type::prod(Type::tr(), Type::tr()),
            Type::fun(Type::var("*"), Type::var("**")),
        );
        assert_eq!(t.to_string(), "tr # tr -> * -> **");
        let u = Type::prod(Type::fun(Type::tr(), Type::tr()), Type::tr());
        assert_eq!(u.to_string(), "(tr -> tr) # tr");
        let w = Type::prod(Type::prod(Type::tr(), Type::tr()), Type::tr());
        assert_eq!(w.to_string(), "(tr # tr) # tr");
    }

    #[test]
    fn substitution() {
        let mut th = TypeSubst::new();
        th.insert("*".into(), Type::tr());
        let t = Type::fun(Type::var("*"), Type::var("**"));
        assert_eq!(t.subst(&th), Type::fun(Type::tr(), Type::var("**")));
    }
}
