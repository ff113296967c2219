"""Reference values of E_{a,b}(z) by direct power series in extended precision.

Writes ml_table.rs next to this script: a Rust array of
(alpha, beta, z_re, z_im, e_re, e_im) tuples.
"""
import os
import mpmath as mp


def ml_series(a, b, z):
    a, b, z = mp.mpf(a), mp.mpf(b), mp.mpc(z)
    r = abs(z)
    # size of the largest term decides the working precision
    logmax, k = mp.mpf(0), 0
    while True:
        lt = k * mp.log(r) - mp.loggamma(a * k + b) if r > 0 else -mp.loggamma(b)
        logmax = max(logmax, lt)
        if k > 10 and lt < logmax - 200:
            break
        k += 1
    with mp.workdps(int(logmax / mp.log(10)) + 60):
        z = mp.mpc(z)
        total, term_k = mp.mpc(0), 0
        zk = mp.mpc(1)
        while True:
            term = zk / mp.gamma(a * term_k + b)
            total += term
            if term_k > 10 and abs(term) < mp.mpf(10) ** (-50) * max(abs(total), mp.mpf(10) ** (-300)):
                break
            zk *= z
            term_k += 1
        return complex(total)


def main():
    rows = []
    alphas = [0.3, 0.5, 0.75, 0.9, 1.0, 1.25, 1.5, 1.75, 2.0]
    radii = [0.5, 3.0, 9.5, 10.5, 25.0, 50.0]
    for a in alphas:
        for b in [1.0, 2.0]:
            for r in radii:
                if a < 0.5 and r > 10.5:
                    continue
                for z in [complex(-r, 0.0), complex(0.0, r)]:
                    rows.append((a, b, z, ml_series(a, b, z)))
    out = os.path.join(os.path.dirname(os.path.abspath(__file__)), "ml_table.rs")
    with open(out, "w") as fh:
        fh.write("// generated by ml_oracle.py: (alpha, beta, z_re, z_im, e_re, e_im)\n")
        fh.write("#[rustfmt::skip]\n")
        fh.write("pub const ML_TABLE: &[(f64, f64, f64, f64, f64, f64)] = &[\n")
        for a, b, z, e in rows:
            fh.write(f"    ({a!r}, {b!r}, {z.real!r}, {z.imag!r}, {e.real!r}, {e.imag!r}),\n")
        fh.write("];\n")
    print(f"{len(rows)} rows -> {out}")


if __name__ == "__main__":
    main()
