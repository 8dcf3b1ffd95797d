"""Generate newform fixture files with PARI/GP (via the `cypari` package).

This script is not used at runtime.  It writes JSON files in the format read by
``edspowers.newforms.load_newforms``.  Each file holds a list of newform records
for one (level, character) pair, with Hecke eigenvalues a_p and character values
written in the power basis of an absolute coefficient field.

    python3 scripts/make_newform_fixtures.py 17 34 4352
    python3 scripts/make_newform_fixtures.py 1280:3:20 6400:3:20
"""
import json
import sys
import time
from pathlib import Path

from cypari import pari

pari.allocatemem(4 * 10**9)

OUT = Path(__file__).resolve().parents[1] / "src" / "edspowers" / "data" / "newforms"
PMAX = 200


def frac(q) -> str:
    q = pari(q)
    num, den = int(pari.numerator(q)), int(pari.denominator(q))
    return f"{num}/{den}" if den != 1 else str(num)


def vec(pm, deg: int) -> list:
    """Coefficients of a polmod (or rational) in the power basis, length deg."""
    lifted = pari.lift(pm)
    out = []
    for i in range(deg):
        out.append(frac(pari.polcoef(lifted, i, "x")))
    return out


def run(level: int, conrey: int = 1, modulus: int = 1) -> None:
    t0 = time.time()
    if conrey == 1:
        pari(f"mf=mfinit([{level},2],0)")
        order = 1
    else:
        pari(f"mf=mfinit([{level},2,Mod({conrey},{modulus})],0)")
        pari(f"G=znstar({modulus},1); chi=znconreychar(G,{conrey})")
        order = int(pari("charorder(G,chi)"))
    # coefficients of the eigenforms as linear combinations of the basis; much
    # faster than calling mfcoefs on each eigenform
    pari("S=mfsplit(mf); P=S[2]")
    pari(f"M=mfcoefs(mf,{PMAX})")
    n = int(pari("#P"))
    print(f"level {level}: {n} orbits, mfinit+split {time.time() - t0:.1f}s", flush=True)
    primes = [int(p) for p in pari(f"primes([2,{PMAX}])")]
    records = []
    for k in range(1, n + 1):
        pari(f"c=M*S[1][,{k}]; c=c/c[2]")
        if order > 2:
            # absolute field over Q(zeta_order); the mf variable t is a root of polcyclo(order,t)
            pari(f"R=rnfequation(nfinit(polcyclo({order},t)),P[{k}],1)")
            pari("ab=subst(R[1],y,x); ta=subst(lift(R[2]),y,x); yb=x-R[3]*ta")
            pari("toabs(z)=my(u=liftall(z)); Mod(subst(subst(u,y,yb),t,ta),ab)")
        else:
            pari(f"ab=subst(P[{k}],y,x)")
            pari("toabs(z)=Mod(subst(liftall(z),y,x),ab)")
        pari("rb=polredbest(ab,1); ab2=rb[1]; sub=lift(rb[2])")
        pari("toabs2(z)=Mod(subst(lift(toabs(z)),x,sub),ab2)")
        deg = int(pari("poldegree(ab2)"))
        field_poly = [frac(pari(f"polcoef(ab2,{i})")) for i in range(deg + 1)]
        ap = {}
        for p in primes:
            ap[str(p)] = vec(pari(f"toabs2(c[{p}+1])"), deg)
        values = {}
        if order > 2:
            for p in primes:
                if level % p == 0:
                    continue
                e = pari(f"chareval(G,chi,{p})")
                val = pari(f"toabs2(Mod(t,polcyclo({order},t))^({e}*{order}))")
                values[str(p)] = vec(val, deg)
            # cross-check the character against a_{p^2} = a_p^2 - chi(p) p
            pari(f"c2=mfcoefs(mf,{49*49})*S[1][,{k}]; c2=c2/c2[2]")
            for p in [q for q in primes if q < 50 and level % q]:
                lhs = pari(f"toabs2(c2[{p}^2+1])")
                rhs = pari(f"toabs2(c2[{p}+1])^2 - {p}*Mod(Polrev([{','.join(values[str(p)])}],x),ab2)")
                assert lhs == rhs, (level, k, p)
        elif order == 2:
            raise NotImplementedError
        # CM forms vanish at the inert half of the primes
        good = [p for p in primes if level % p]
        zeros = sum(1 for p in good if pari(f"c[{p}+1]") == 0)
        cm = zeros > 0.4 * len(good)
        records.append({
            "level": level,
            "weight": 2,
            "character": {"modulus": modulus, "order": order, "conrey": conrey, "values": values},
            "field_poly": field_poly,
            "ap": ap,
            "labels": f"{level}.2.{conrey if conrey != 1 else 'a'}.{k}",
            "cm": bool(cm),
        })
        print(f"  form {k}: degree {deg} ({time.time() - t0:.1f}s)", flush=True)
    name = f"level_{level}.json" if conrey == 1 else f"level_{level}_chi{modulus}_{conrey}.json"
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / name).write_text(json.dumps(records, indent=None, separators=(",", ":")))
    print(f"wrote {name} in {time.time() - t0:.1f}s", flush=True)


if __name__ == "__main__":
    for arg in sys.argv[1:]:
        parts = [int(s) for s in arg.split(":")]
        run(*parts)
