//! Formula conversions: rewriting predicates, descending through
//! connectives, and removing tautologies with BASIC_FCONV.

use convkit::conv::{beta_conv, first_conv, orelsec, redepth_conv, rewrite_conv, Conv};
use convkit::fconv::{basic_fconv, depth_fconv, first_fconv, pred_fconv, rewrite_fconv, FConv};
use convkit::kernel::Theory;
use convkit::syntax::{parse_form, parse_type};

fn many_conv(root: &Theory) -> convkit::Result<Conv> {
    let labels = ["COND_UU", "COND_TT", "COND_FF", "MIN_COMB", "MIN_ABS", "MK_PAIR", "FST_PAIR", "SND_PAIR"];
    let rws = labels.iter().map(|l| rewrite_conv(&root.axiom(l)?)).collect::<convkit::Result<Vec<_>>>()?;
    Ok(orelsec(&first_conv(&rws), &beta_conv()))
}

fn main() -> convkit::Result<()> {
    let mut thy = Theory::new("fconv_demo", vec![Theory::pplambda()]);
    thy.declare_predicate("P", parse_type("* # **")?)?;
    thy.declare_predicate("Q", parse_type("*")?)?;
    let p_q = thy.new_axiom("P_Q", &parse_form(&thy, "!x. P (x,x) <=> Q x")?)?;
    let less_uu = thy.new_axiom("LESS_UU", &parse_form(&thy, "!x. x << UU <=> x == UU")?)?;

    let many = many_conv(&Theory::pplambda())?;
    let rd = redepth_conv(&many);
    let a = parse_form(&thy, "P ((\\t.(\\u.t,u)FF)TT, (FST(TT,FF) => x | y))")?;
    println!("{}", pred_fconv(&rd).apply(&a)?);

    let many_f: FConv = first_fconv(&[rewrite_fconv(&p_q)?, rewrite_fconv(&less_uu)?]);
    let d = depth_fconv(&rd, &many_f);
    let b = basic_fconv(&many, &many_f);
    for text in [
        "!x y. P ((TT => y | z), SND(y,y)) ==> Q ((\\p.(p => v | y))FF)",
        "?x. x << UU TT \\/ SND(x,TT) == (UU => TT | FF)",
        "!x. ?p. (FST(p,p) => x | UU) == (p => (\\z.SND(x,z))x | (\\r.r)UU)",
    ] {
        let f = parse_form(&thy, text)?;
        println!("depth: {}", d.apply(&f)?);
        println!("basic: {}", b.apply(&f)?);
    }
    Ok(())
}
