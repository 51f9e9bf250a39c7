"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from meadows.terms import ONE, ZERO, Add, InvMd, InvNimd, Mul, Neg, Signature, Var


def terms(sig=Signature.MIXED, variables=("x", "y", "z"), max_leaves=25):
    leaves = st.sampled_from([ZERO, ONE, *(Var(v) for v in variables)])

    def extend(children):
        options = [
            st.builds(Add, children, children),
            st.builds(Mul, children, children),
            children.map(Neg),
        ]
        if sig.admits_inv_md:
            options.append(children.map(InvMd))
        if sig.admits_inv_nimd:
            options.append(children.map(InvNimd))
        return st.one_of(*options)

    return st.recursive(leaves, extend, max_leaves=max_leaves)


def var_names():
    return st.from_regex(r"[a-z][a-z0-9_]{0,5}", fullmatch=True)
