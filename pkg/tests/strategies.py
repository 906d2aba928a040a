from hypothesis import strategies as st

from cooklevin.machine import MachineSpec, TransitionRule


def machines(max_states=3, max_symbols=2, max_rules=6, deterministic=False):
    """Random small machines; rule order and duplicates are kept as drawn."""

    @st.composite
    def build(draw):
        r = draw(st.integers(1, max_states))
        l = draw(st.integers(1, max_symbols))
        rule = st.builds(
            TransitionRule,
            st.integers(0, r - 1),
            st.integers(0, l - 1),
            st.integers(0, r - 1),
            st.integers(0, l - 1),
            st.sampled_from("LRS"),
        )
        rules = draw(st.lists(rule, max_size=max_rules))
        if deterministic:
            seen, kept = set(), []
            for rl in rules:
                if (rl.from_state, rl.read) not in seen:
                    seen.add((rl.from_state, rl.read))
                    kept.append(rl)
            rules = kept
        accept = draw(st.frozensets(st.integers(0, r - 1), max_size=r))
        return MachineSpec(
            tuple("_abc"[:l]), tuple(f"q{i}" for i in range(r)), accept, tuple(rules), "random"
        )

    return build()


def words(m, max_len=3):
    return st.lists(st.integers(1, max(m.l - 1, 1)) if m.l > 1 else st.just(0), max_size=max_len).map(tuple)
