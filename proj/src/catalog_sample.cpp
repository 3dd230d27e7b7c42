// Seeded parameter samplers: one draw procedure per table family, each
// aiming inside the family's hypothesis region and recording any repairs
// it applied to get there.
#include "tetkit/catalog.hpp"

#include <string>

namespace tetkit {

namespace {

MarginDist desc4l(long a3, long a2, long a1, long b1, long b2, long b3) {
    MarginDist d(4);
    d.at(3) = a3;
    d.at(2) = a2;
    d.at(1) = a1;
    d.at(-1) = b1;
    d.at(-2) = b2;
    d.at(-3) = b3;
    return d;
}

// Shifts class 1 or -1 mass until the margin sum hits the target.
void balance(MarginDist& a, long target, std::vector<std::string>& notes) {
    long d = to_long(margin_sum(a)) - target;
    if (d > 0) {
        a.at(-1) += d;
        notes.push_back("raised the class -1 count to meet the margin-sum hypothesis");
    } else if (d < 0) {
        a.at(1) += -d;
        notes.push_back("raised the class 1 count to meet the margin-sum hypothesis");
    }
}

MarginDist normalized(const MarginDist& a) {
    MarginDist out = a;
    Rat t = a.total();
    for (Rat& x : out.v) x /= t;
    return out;
}

// One unchecked draw; the caller filters through build_table.
SampledParams draw_once(LemmaId id, Rng& rng) {
    SampledParams s;
    LemmaParams& p = s.params;
    auto counts = [&](long lo, long hi) {
        long c3 = rng.range(lo, hi);
        long c2 = rng.range(lo, hi);
        long c1 = rng.range(lo, hi);
        long b1 = rng.range(lo, hi);
        long b2 = rng.range(lo, hi);
        long b3 = rng.range(lo, hi);
        return desc4l(c3, c2, c1, b1, b2, b3);
    };
    switch (id) {
        case LemmaId::L2candsym: {
            long c3 = rng.range(0, 4), c2 = rng.range(0, 4), c1 = rng.range(0, 4);
            if (c1 + c2 + c3 == 0) c1 = 1;
            p.alpha = normalized(desc4l(c3, c2, c1, c1, c2, c3));
            break;
        }
        case LemmaId::Lfirstcomb:
        case LemmaId::Lsecondcomb:
        case LemmaId::Lthirdcomb: {
            MarginDist a = counts(0, 6);
            balance(a, 0, s.notes);
            if (a.total() == 0) a.at(1) = a.at(-1) = 1;
            p.alpha = normalized(a);
            break;
        }
        case LemmaId::Lfirstgeq: {
            long q2 = rng.range(0, 4), qm2 = rng.range(0, 4);
            long q1 = rng.range(0, 6), delta = rng.range(0, 1);
            // margin 2(q2 - qm2) + q1 - qm1 = delta
            long qm1 = 2 * (q2 - qm2) + q1 - delta;
            if (qm1 < 0) {
                q1 += -qm1;
                qm1 = 0;
            }
            if (q1 + qm1 + q2 + qm2 == 0) {
                q1 = 1;
                qm1 = 1;
            }
            // keep the light classes in the majority and the margin small
            long pad = 2 * (q2 + qm2) + 10 * delta;
            q1 += pad;
            qm1 += pad;
            p.alpha = normalized(desc4l(0, q2, q1, qm1, qm2, 0));
            break;
        }
        case LemmaId::Lsecondgeq: {
            long q1 = rng.range(0, 3), qm1 = rng.range(0, 3);
            long q2 = rng.range(0, 5), delta = rng.range(0, 1);
            long qm2r = 2 * q2 + q1 - qm1 - delta;
            if (qm2r < 0 || qm2r % 2 != 0) {
                long fix = qm2r < 0 ? -qm2r : qm2r % 2;
                q1 += fix;
                qm2r += fix;
            }
            long qm2 = qm2r / 2;
            if (q1 + qm1 + q2 + qm2 == 0) {
                q2 = 1;
                qm2 = 1;
            }
            long pad = q1 + qm1 + 10 * delta;
            q2 += pad;
            qm2 += pad;
            p.alpha = normalized(desc4l(0, q2, q1, qm1, qm2, 0));
            break;
        }
        case LemmaId::Ldoubling: {
            MarginDist a = counts(0, 6);
            if (a.total() == 0) a.at(2) = 1;
            p.alpha = normalized(a);
            break;
        }
        case LemmaId::LconsistentAk: {
            long q = rng.range(1, 8);
            p.b1 = Rat(rng.range(-q, q), q);
            p.b2 = Rat(rng.range(-q, q), q);
            break;
        }
        case LemmaId::Llayersk: {
            int k = static_cast<int>(rng.range(5, 8));
            MarginDist a(k);
            Rat t = 0;
            for (Rat& x : a.v) {
                x = rng.range(0, 5);
                t += x;
            }
            if (t == 0) {
                a.v[0] = 1;
                t = 1;
            }
            for (Rat& x : a.v) x /= t;
            p.alpha = a;
            p.k = k;
            break;
        }
        case LemmaId::Ldiagonals: {
            p.a = rng.range(0, 3);
            p.n = rng.range(std::max(1L, 3 * p.a), 3 * p.a + 10);
            if ((p.n - p.a) % 2 != 0) {
                p.n += 1;
                s.notes.push_back("raised n by 1 to make n - a even");
            }
            long m = (p.n - 3 * p.a) / 2;
            p.s1 = rng.range(0, m);
            p.s2 = rng.range(0, m - p.s1);
            p.s3 = m - p.s1 - p.s2;
            break;
        }
        case LemmaId::Ltwelvestep: {
            p.a = rng.range(1, 4);
            p.n = 5 * p.a + 2 * rng.range(0, 5);
            break;
        }
        case LemmaId::Lkleqn4a:
        case LemmaId::Lkleqn4b: {
            p.a = rng.range(2, 5);
            p.n = 4 * p.a + rng.range(0, 8);
            if ((p.n - p.a) % 2 != 0) {
                p.n += 1;
                s.notes.push_back("raised n by 1 to make n - a even");
            }
            break;
        }
        case LemmaId::Lkleqn3_3an: {
            p.a = rng.range(1, 6);
            p.n = 3 * p.a;
            break;
        }
        case LemmaId::Lkleqn3_beta:
        case LemmaId::Lkleqn3_gamma: {
            p.a = rng.range(3, 8);
            long lo = 3 * p.a + 1, hi = 4 * p.a - 1;
            p.n = rng.range(lo, hi);
            if ((p.n - p.a) % 2 != 0) p.n += p.n < hi ? 1 : -1;
            break;
        }
        case LemmaId::Lalmostb4: {
            MarginDist a = counts(0, 5);
            balance(a, 0, s.notes);
            if (a.total() == 0) a.at(1) = a.at(-1) = 1;
            p.alpha = a;
            break;
        }
        case LemmaId::Laddingthrees: {
            MarginDist a = desc4l(0, rng.range(0, 4), rng.range(0, 6), rng.range(0, 6),
                                  rng.range(0, 4), 0);
            balance(a, 0, s.notes);
            while (a.total() < 3) {
                a.at(1) += 1;
                a.at(-1) += 1;
            }
            p.alpha = a;
            break;
        }
        case LemmaId::Lalpha12: {
            long a2 = rng.range(0, 3), a1 = rng.range(0, 4), bm2 = rng.range(1, 4);
            long bm1 = 3 + 2 * a2 + a1 - 2 * bm2;
            p.alpha = desc4l(1, a2, a1, bm1, bm2, 0);
            break;
        }
        case LemmaId::Lalpha1: {
            long a2 = rng.range(0, 3), a1 = rng.range(0, 4);
            p.alpha = desc4l(1, a2, a1, 3 + 2 * a2 + a1, 0, 0);
            break;
        }
        case LemmaId::Lalpha2: {
            long a2 = rng.range(0, 3), a1 = 2 * rng.range(0, 2) + 1;
            p.alpha = desc4l(1, a2, a1, 0, (3 + 2 * a2 + a1) / 2, 0);
            break;
        }
        case LemmaId::Lsmalln: {
            long c = rng.range(1, 3);
            if (c == 1)
                p.alpha = desc4l(1, 0, 1, 2, 1, 0);
            else if (c == 2)
                p.alpha = desc4l(1, 1, 0, 1, 2, 0);
            else
                p.alpha = desc4l(1, 0, 0, 1, 1, 0);
            break;
        }
        case LemmaId::Lfirstm1_odd:
        case LemmaId::Lfirstm1_even:
        case LemmaId::Lsecondm1:
        case LemmaId::Lthirdm1A: {
            MarginDist a = counts(0, 4);
            if (id == LemmaId::Lsecondm1) {
                if (a.at(2) + a.at(-2) == 0) a.at(2) = 1;
                if (a.at(3) + a.at(-1) == 0) a.at(-1) = 1;
                if (a.at(1) + a.at(-3) == 0) a.at(1) = 1;
            }
            if (id == LemmaId::Lthirdm1A) {
                if (a.at(2) + a.at(-2) == 0) a.at(-2) = 1;
                if (rng.range(0, 1) == 0) {
                    a.at(1) = 0;
                    a.at(-3) = 0;
                } else {
                    a.at(3) = 0;
                    a.at(-1) = 0;
                }
            }
            balance(a, -1, s.notes);
            p.alpha = a;
            break;
        }
        case LemmaId::Levenfix: {
            long a3 = 4 * rng.range(0, 2) + 3, a2 = rng.range(0, 5);
            p.alpha = desc4l(a3, a2, 0, 0, (3 * a3 + 2 * a2 + 1) / 2, 0);
            break;
        }
        case LemmaId::Lthirdm1: {
            long a3 = rng.range(0, 3), a1 = rng.range(0, 4), b3 = rng.range(0, 3);
            long b1 = 3 * a3 + a1 - 3 * b3 + 1;
            if (b1 < 0) {
                b3 = 0;
                b1 = 3 * a3 + a1 + 1;
            }
            if (a1 + b3 == 0) {
                a1 += 1;
                b1 += 1;
            }
            p.alpha = desc4l(a3, 0, a1, b1, 0, b3);
            break;
        }
        case LemmaId::Llastm1: {
            long a3 = rng.range(1, 6);
            p.alpha = desc4l(a3, 0, 0, 3 * a3 + 1, 0, 0);
            break;
        }
        case LemmaId::Lmmain: {
            MarginDist a = counts(0, 4);
            long target = -(2 + static_cast<long>(rng.below(5)));
            balance(a, target, s.notes);
            if (a.total() == 2) {
                a.at(-1) += 1;
                a.at(1) += 1;
                s.notes.push_back("added a cancelling pair to move the total off 2");
            }
            p.alpha = a;
            break;
        }
        case LemmaId::Ln2special: {
            p.a = 1 + static_cast<long>(rng.below(7));
            break;
        }
        case LemmaId::Lak: {
            int k = static_cast<int>(rng.range(5, 7));
            long n = rng.range(1, 5);
            MarginProfile e{k, {}};
            e.margins.push_back(static_cast<int>((rng.range(0, 1) ? 1 : -1) * (k - 1)));
            for (long j = 1; j < n; ++j) {
                int v = static_cast<int>(rng.range(1, k - 1));
                e.margins.push_back(rng.range(0, 1) ? v : -v);
            }
            long b = 0;
            for (int m : e.margins) b += m;
            if (b > 0) {
                for (int& m : e.margins) m = -m;
                s.notes.push_back("negated the profile to make the margin sum non-positive");
            }
            p.e = e;
            p.k = k;
            break;
        }
    }
    return s;
}

}  // namespace

SampledParams sample_params(LemmaId id, Rng& rng) {
    for (int attempt = 0; attempt < 4000; ++attempt) {
        SampledParams s = draw_once(id, rng);
        try {
            build_table(id, s.params);
            return s;
        } catch (const PreconditionError&) {
            continue;
        }
    }
    throw std::logic_error("sample_params: could not hit the hypothesis region for " +
                           lemma_str(id));
}

std::vector<std::string> check_claims(const BuiltTable& bt) {
    std::vector<std::string> out;
    ValidationReport rep = validate(bt.table);
    for (const Violation& v : rep.violations) {
        std::string where = v.where;
        if (v.column > 0) where += " column " + std::to_string(v.column);
        out.push_back(where + ": " + v.what);
    }
    if (!rep.valid) return out;
    if (rep.tying != bt.tying)
        out.push_back(std::string("tying flag: table is ") + (rep.tying ? "tying" : "non-tying") +
                      " but the claim says otherwise");
    if (bt.rows.size() != bt.table.M.size()) {
        out.push_back("row claims: count differs from the table rows");
        return out;
    }
    bool target_seen = false;
    for (std::size_t i = 0; i < bt.rows.size(); ++i) {
        MarginDist row = row_distribution(bt.table, static_cast<int>(i) + 1);
        std::string where = "row " + std::to_string(i + 1) + " claim: ";
        if (!bt.rows[i].exact && !bt.rows[i].margin)
            out.push_back(where + "neither an exact vector nor a margin is stated");
        if (bt.rows[i].exact && row != *bt.rows[i].exact)
            out.push_back(where + "vector differs from the stated " + dist_str(*bt.rows[i].exact));
        if (bt.rows[i].margin && margin_sum(row) != *bt.rows[i].margin)
            out.push_back(where + "margin sum differs from the stated " + rat_str(*bt.rows[i].margin));
        if (row == bt.target) target_seen = true;
    }
    if (bt.tying) {
        if (!target_seen) out.push_back("target: no row carries the claimed vector");
    } else if (!rep.tying && vector_distribution(bt.table, bt.table.m0()) != bt.target) {
        out.push_back("target: M0 does not reconstruct the claimed vector");
    }
    return out;
}

}  // namespace tetkit
