#include "builtin_defs.hpp"

// Built-in rewrite systems. Each system is stored as canonical rule-file text
// (the byte-stable dump output) plus its recorded meta-status and the number
// representation its normal forms realize.
//
// Naming scheme: N*/Z* define naturals/integers; the suffix orders the views
// by which notation is rewritten into which (u = unary, b = binary,
// d = decimal, 1 = unary zero-append, t/bt/dt/bi = tree-shaped carriers).
// The two *-verbatim systems reproduce known flaws of the printed sources:
// Zubd-verbatim has an unsound zero rule, Zdub-verbatim an index range that
// hits an undefined digit operation on expansion.

namespace ddrs {

namespace {

using T = SystemStatus::Termination;
using C = SystemStatus::Confluence;
using G = SystemStatus::GroundConfluence;

SystemStatus status(T t, std::string tn, C c, std::string cn, G g, std::string gn) {
  SystemStatus s;
  s.termination = t;
  s.confluence = c;
  s.ground_confluence = g;
  s.termination_note = std::move(tn);
  s.confluence_note = std::move(cn);
  s.ground_confluence_note = std::move(gn);
  return s;
}

const char* kKW = "Kluiving & van Woerkom (2016)";

// --- Naturals, unary view over the append signature -------------------------

const char* kNubd = R"(# ddrs-format 1
system Nubd over nat-append
# Unary view: binary and decimal appends rewrite away into successor numerals.
rule [S1]: x + 0 -> x
rule [S2]: x + S(y) -> S(x + y)
rule [S3]: x * 0 -> 0
rule [S4]: x * S(y) -> (x * y) + x
rule [S5.i] for i in 0..8: {i'} -> S({i})
rule [S6.i] for i in 0..1: x:b{i} -> (x * S(1)) + {i}
rule [S7.i] for i in 0..9: x:d{i} -> (x * S(9)) + {i}
)";

// --- Integers, unary view ----------------------------------------------------

const char* kZubd = R"(# ddrs-format 1
system Zubd over int-append
# Unary view of the integers; normal forms are 0, S^n(0) and -S^n(0).
rule [u1]: -0 -> 0
rule [u2]: -(-x) -> x
rule [u3]: P(0) -> -S(0)
rule [u4]: P(S(x)) -> x
rule [u5]: P(-x) -> -S(x)
rule [u6]: S(-S(x)) -> -x
rule [u7]: x + 0 -> x
rule [u8]: 0 + x -> x
rule [u9]: x + S(y) -> S(x + y)
rule [u10]: S(x) + y -> S(x + y)
rule [u11]: (-x) + (-y) -> -(x + y)
rule [u12]: x * 0 -> 0
rule [u13]: x * S(y) -> (x * y) + x
rule [u14]: x * (-y) -> -(x * y)
rule [u15.i] for i in 0..8: {i'} -> S({i})
rule [u16.i] for i in 0..1: x:b{i} -> (x * S(1)) + {i}
rule [u17.i] for i in 0..9: x:d{i} -> (x * S(9)) + {i}
)";

// As printed in its source: rule [u8] sends 0 + x to 0, which is unsound.
const char* kZubdVerbatim = R"(# ddrs-format 1
system Zubd-verbatim over int-append
# Unary view of the integers with the flawed zero rule as printed: [u8]
# rewrites 0 + x to 0 instead of x.
rule [u1]: -0 -> 0
rule [u2]: -(-x) -> x
rule [u3]: P(0) -> -S(0)
rule [u4]: P(S(x)) -> x
rule [u5]: P(-x) -> -S(x)
rule [u6]: S(-S(x)) -> -x
rule [u7]: x + 0 -> x
rule [u8]: 0 + x -> 0
rule [u9]: x + S(y) -> S(x + y)
rule [u10]: S(x) + y -> S(x + y)
rule [u11]: (-x) + (-y) -> -(x + y)
rule [u12]: x * 0 -> 0
rule [u13]: x * S(y) -> (x * y) + x
rule [u14]: x * (-y) -> -(x * y)
rule [u15.i] for i in 0..8: {i'} -> S({i})
rule [u16.i] for i in 0..1: x:b{i} -> (x * S(1)) + {i}
rule [u17.i] for i in 0..9: x:d{i} -> (x * S(9)) + {i}
)";

// --- Naturals / integers, unary zero-append view -----------------------------

const char* kNu1 = R"(# ddrs-format 1
system Nu1 over nat-zeroappend
# Unary zero-append view: n is written as 0 followed by n appends of :u0.
rule [u'1]: x + 0 -> x
rule [u'2]: x + y:u0 -> (x:u0) + y
rule [u'3]: x * 0 -> 0
rule [u'4]: x * y:u0 -> (x * y) + x
)";

const char* kZu1 = R"(# ddrs-format 1
system Zu1 over int-zeroappend
rule [u'1]: x + 0 -> x
rule [u'2]: x + y:u0 -> (x:u0) + y
rule [u'3]: x * 0 -> 0
rule [u'4]: x * y:u0 -> (x * y) + x
rule [u'5]: -0 -> 0
rule [u'6]: -(-x) -> x
rule [u'7]: 0 + x -> x
rule [u'8]: x:u0 + (-(y:u0)) -> x + (-y)
rule [u'9]: (-(y:u0)) + x:u0 -> x + (-y)
rule [u'10]: (-x) + (-y) -> -(x + y)
rule [u'11]: x * (-y) -> -(x * y)
rule [u'12]: (-x) * y -> -(x * y)
)";

// --- Naturals / integers, binary view ----------------------------------------

const char* kNbud = R"(# ddrs-format 1
system Nbud over nat-append
# Binary view: unary and decimal notation rewrite into binary append normal
# forms 0, 1, and 1 followed by :b0/:b1 appends.
rule [b1.i] for i in 0..1: 0:b{i} -> {i}
rule [b2]: S(0) -> 1
rule [b3]: S(1) -> 1:b0
rule [b4]: S(x:b0) -> x:b1
rule [b5]: S(x:b1) -> S(x):b0
rule [b6]: x + 0 -> x
rule [b7]: 0 + x -> x
rule [b8]: x + 1 -> S(x)
rule [b9]: 1 + x -> S(x)
rule [b10.i.j] for i in 0..1, j in 0..1: x:b{i} + y:b{j} -> S^{j}((x + y):b{i})
rule [b11]: x * 0 -> 0
rule [b12]: x * 1 -> x
rule [b13.i] for i in 0..1: x * y:b{i} -> ((x * y):b0) + (x * {i})
rule [b14.i] for i in 1..8: {i'} -> S({i})
rule [b15.i] for i in 0..9: x:d{i} -> (x * S(9)) + {i}
)";

const char* kZbud = R"(# ddrs-format 1
system Zbud over int-append
rule [b1.i] for i in 0..1: 0:b{i} -> {i}
rule [b2]: S(0) -> 1
rule [b3]: S(1) -> 1:b0
rule [b4]: S(x:b0) -> x:b1
rule [b5]: S(x:b1) -> S(x):b0
rule [b6]: x + 0 -> x
rule [b7]: 0 + x -> x
rule [b8]: x + 1 -> S(x)
rule [b9]: 1 + x -> S(x)
rule [b10.i.j] for i in 0..1, j in 0..1: x:b{i} + y:b{j} -> S^{j}((x + y):b{i})
rule [b11]: x * 0 -> 0
rule [b12]: x * 1 -> x
rule [b13.i] for i in 0..1: x * y:b{i} -> ((x * y):b0) + (x * {i})
rule [b14.i] for i in 1..8: {i'} -> S({i})
rule [b15.i] for i in 0..9: x:d{i} -> (x * S(9)) + {i}
rule [b16]: -0 -> 0
rule [b17]: -(-x) -> x
rule [b18]: P(0) -> -1
rule [b19]: P(1) -> 0
rule [b20]: P(x:b0) -> P(x):b1
rule [b21]: P(x:b1) -> x:b0
rule [b22]: P(-x) -> -S(x)
rule [b23]: S(-1) -> 0
rule [b24]: S(-(x:b0)) -> -(P(x):b1)
rule [b25]: S(-(x:b1)) -> -(x:b0)
rule [b26]: (-x):b0 -> -(x:b0)
rule [b27]: (-x):b1 -> -(P(x):b1)
rule [b28]: x + (-1) -> P(x)
rule [b29]: (-1) + x -> P(x)
rule [b30.i.j] for i in 0..1, j in 0..1: x:b{i} + (-(y:b{j})) -> P^{j}((x + (-y)):b{i})
rule [b31.i.j] for i in 0..1, j in 0..1: (-(y:b{j})) + x:b{i} -> P^{j}((x + (-y)):b{i})
rule [b32]: (-x) + (-y) -> -(x + y)
rule [b33]: x * (-y) -> -(x * y)
)";

// --- Naturals / integers, decimal view ----------------------------------------

const char* kNdub = R"(# ddrs-format 1
system Ndub over nat-append
# Decimal view: unary and binary notation rewrite into decimal append normal
# forms (a digit, or a nonzero form followed by :d digits).
rule [d1.i] for i in 0..9: 0:d{i} -> {i}
rule [d2.i] for i in 0..8: S({i}) -> {i'}
rule [d3]: S(9) -> 1:d0
rule [d4.i] for i in 0..8: S(x:d{i}) -> x:d{i'}
rule [d5]: S(x:d9) -> S(x):d0
rule [d6]: x + 0 -> x
rule [d7]: 0 + x -> x
rule [d8.i] for i in 1..9: x + {i} -> S^{i}(x)
rule [d9.i] for i in 1..9: {i} + x -> S^{i}(x)
rule [d10.i.j] for i in 0..9, j in 0..9: x:d{i} + y:d{j} -> S^{j}((x + y):d{i})
rule [d11]: x * 0 -> 0
rule [d12.i] for i in 0..8: x * {i'} -> (x * {i}) + x
rule [d13.i] for i in 0..9: x * y:d{i} -> ((x * y):d0) + (x * {i})
rule [d14.i] for i in 0..1: x:b{i} -> (x + x) + {i}
)";

const char* kZdubCommon = R"(rule [d1.i] for i in 0..9: 0:d{i} -> {i}
rule [d2.i] for i in 0..8: S({i}) -> {i'}
rule [d3]: S(9) -> 1:d0
rule [d4.i] for i in 0..8: S(x:d{i}) -> x:d{i'}
rule [d5]: S(x:d9) -> S(x):d0
rule [d6]: x + 0 -> x
rule [d7]: 0 + x -> x
rule [d8.i] for i in 1..9: x + {i} -> S^{i}(x)
rule [d9.i] for i in 1..9: {i} + x -> S^{i}(x)
rule [d10.i.j] for i in 0..9, j in 0..9: x:d{i} + y:d{j} -> S^{j}((x + y):d{i})
rule [d11]: x * 0 -> 0
rule [d12.i] for i in 0..8: x * {i'} -> (x * {i}) + x
rule [d13.i] for i in 0..9: x * y:d{i} -> ((x * y):d0) + (x * {i})
rule [d14.i] for i in 0..1: x:b{i} -> (x + x) + {i}
rule [d15]: -0 -> 0
rule [d16]: -(-x) -> x
rule [d17]: P(0) -> -1
rule [d18.i] for i in 0..8: P({i'}) -> {i}
rule [d19]: P(x:d0) -> P(x):d9
rule [d20.i] for i in 0..8: P(x:d{i'}) -> x:d{i}
rule [d21]: P(-x) -> -S(x)
rule [d22.i] for i in 0..8: S(-{i'}) -> -{i}
rule [d23]: S(-(x:d0)) -> -(P(x):d9)
rule [d24.i] for i in 0..8: S(-(x:d{i'})) -> -(x:d{i})
rule [d25]: (-x):d0 -> -(x:d0)
)";

// Digit 0 of the negative-append schema is split off as the corrected
// concrete instance [d26.0] (the 10-minus operation is undefined at 0).
const char* kZdubTail = R"(rule [d26.0]: (-x):d0 -> -(x:d0)
rule [d26.i] for i in 1..9: (-x):d{i} -> -(P(x):d{i*})
)";

// As printed: [d26] ranges over all ten digits and hits 0* on expansion.
const char* kZdubVerbatimTail = R"(rule [d26.i] for i in 0..9: (-x):d{i} -> -(P(x):d{i*})
)";

const char* kZdubSuffix = R"(rule [d27.i] for i in 1..9: x + (-{i}) -> P^{i}(x)
rule [d28.i] for i in 1..9: (-{i}) + x -> P^{i}(x)
rule [d29.i.j] for i in 0..9, j in 0..9: x:d{i} + (-(y:d{j})) -> P^{j}((x + (-y)):d{i})
rule [d30.i.j] for i in 0..9, j in 0..9: (-(y:d{j})) + x:d{i} -> P^{j}((x + (-y)):d{i})
rule [d31]: (-x) + (-y) -> -(x + y)
rule [d32]: x * (-y) -> -(x * y)
)";

// --- Naturals / integers, unary tree view ------------------------------------

const char* kNut = R"(# ddrs-format 1
system Nut over nat-treeu
# Unary tree view: n is a left-nested chain of n unary tree constructors
# over 0 (the constructor adds its operands plus one).
rule [ut1]: x ^u (y ^u z) -> (x ^u y) ^u z
rule [ut2]: x + 0 -> x
rule [ut3]: x + (y ^u 0) -> (x + y) ^u 0
rule [ut4]: x * 0 -> 0
rule [ut5]: x * (y ^u 0) -> (x * y) + x
)";

const char* kZut = R"(# ddrs-format 1
system Zut over int-treeu
rule [ut1]: x ^u (y ^u z) -> (x ^u y) ^u z
rule [ut2]: x + 0 -> x
rule [ut3]: x + (y ^u 0) -> (x + y) ^u 0
rule [ut4]: x * 0 -> 0
rule [ut5]: x * (y ^u 0) -> (x * y) + x
rule [ut6]: -0 -> 0
rule [ut7]: -(-x) -> x
rule [ut8]: 0 ^u (-(x ^u 0)) -> -x
rule [ut9]: (x ^u 0) ^u (-(y ^u 0)) -> x ^u (-y)
rule [ut10]: (-(x ^u 0)) ^u 0 -> -x
rule [ut11]: (-(y ^u 0)) ^u (x ^u 0) -> x ^u (-y)
rule [ut12]: (-(x ^u 0)) ^u (-(y ^u 0)) -> -((x + y) ^u 0)
rule [ut13]: 0 + x -> x
rule [ut14]: (x ^u 0) + (-(y ^u 0)) -> x + (-y)
rule [ut15]: (-(y ^u 0)) + (x ^u 0) -> x + (-y)
rule [ut16]: (-x) + (-y) -> -(x + y)
rule [ut17]: x * (-y) -> -(x * y)
rule [ut18]: (-x) * y -> -(x * y)
)";

// --- Naturals / integers, binary tree view ------------------------------------

const char* kNbt = R"(# ddrs-format 1
system Nbt over nat-treeb
# Binary tree view: the constructor doubles its left operand and adds the
# right one; normal forms are 0, 1, and left-nested digit chains.
rule [bt1]: 0 ^b x -> x
rule [bt2]: x ^b (y ^b z) -> (x + y) ^b z
rule [bt3]: 0 + x -> x
rule [bt4]: 1 + 0 -> 1
rule [bt5]: 1 + 1 -> 1 ^b 0
rule [bt6]: 1 + (x ^b y) -> x ^b (1 + y)
rule [bt7]: (x ^b y) + z -> x ^b (y + z)
rule [bt8]: x * 0 -> 0
rule [bt9]: x * 1 -> x
rule [bt10]: x * (y ^b z) -> (x * y) ^b (x * z)
)";

const char* kZbi = R"(# ddrs-format 1
system Zbi over int-treeb
rule [bi1]: 0 ^b x -> x
rule [bi2]: x ^b (y ^b z) -> (x + y) ^b z
rule [bi3]: 0 + x -> x
rule [bi4]: x + 0 -> x
rule [bi5]: 1 + 1 -> 1 ^b 0
rule [bi6]: x + (y ^b z) -> y ^b (x + z)
rule [bi7]: (x ^b y) + z -> x ^b (y + z)
rule [bi8]: x * 0 -> 0
rule [bi9]: 0 * x -> 0
rule [bi10]: 1 * 1 -> 1
rule [bi11]: x * (y ^b z) -> (x * y) ^b (x * z)
rule [bi12]: (x ^b y) * z -> (x * z) ^b (y * z)
rule [bi13]: -0 -> 0
rule [bi14]: -(-x) -> x
rule [bi15]: 1 ^b (-1) -> 1
rule [bi16]: (x ^b 0) ^b (-1) -> (x ^b (-1)) ^b 1
rule [bi17]: (x ^b 1) ^b (-1) -> (x ^b 0) ^b 1
rule [bi18]: x ^b (-(y ^b z)) -> -((y + (-x)) ^b z)
rule [bi19]: (-x) ^b y -> -(x ^b (-y))
rule [bi20]: 1 + (-1) -> 0
rule [bi21]: (-1) + 1 -> 0
rule [bi22]: x + (-(y ^b z)) -> -(y ^b (z + (-x)))
rule [bi23]: (-(x ^b y)) + z -> -(x ^b (y + (-z)))
rule [bi24]: x * (-y) -> -(x * y)
rule [bi25]: (-x) * y -> -(x * y)
)";

// --- Naturals / integers, decimal tree view ------------------------------------

const char* kNdt = R"(# ddrs-format 1
system Ndt over nat-treed
# Decimal tree view: the constructor multiplies its left operand by ten and
# adds the right one; normal forms are digits and left-nested digit chains.
rule [dt1]: 0 ^d x -> x
rule [dt2]: x ^d (y ^d z) -> (x + y) ^d z
rule [dt3.i] for i in 0..8: S({i}) -> {i'}
rule [dt4]: S(9) -> 1 ^d 0
rule [dt5.i] for i in 0..8: S(x ^d {i}) -> x ^d {i'}
rule [dt6]: S(x ^d 9) -> S(x) ^d 0
rule [dt7]: x + 0 -> x
rule [dt8.i] for i in 0..8: x + {i'} -> S(x) + {i}
rule [dt9.i] for i in 0..9: x + (y ^d {i}) -> (y ^d x) + {i}
rule [dt10]: x * 0 -> 0
rule [dt11.i] for i in 0..8: x * {i'} -> x + (x * {i})
rule [dt12.i] for i in 0..9: x * (y ^d {i}) -> ((x * y) ^d 0) + (x * {i})
)";

const char* kZdt = R"(# ddrs-format 1
system Zdt over int-treed
rule [dt1]: 0 ^d x -> x
rule [dt2]: x ^d (y ^d z) -> (x + y) ^d z
rule [dt3.i] for i in 0..8: S({i}) -> {i'}
rule [dt4]: S(9) -> 1 ^d 0
rule [dt5.i] for i in 0..8: S(x ^d {i}) -> x ^d {i'}
rule [dt6]: S(x ^d 9) -> S(x) ^d 0
rule [dt7]: x + 0 -> x
rule [dt8.i] for i in 0..8: x + {i'} -> S(x) + {i}
rule [dt9.i] for i in 0..9: x + (y ^d {i}) -> (y ^d x) + {i}
rule [dt10]: x * 0 -> 0
rule [dt11.i] for i in 0..8: x * {i'} -> x + (x * {i})
rule [dt12.i] for i in 0..9: x * (y ^d {i}) -> ((x * y) ^d 0) + (x * {i})
rule [dt13]: -0 -> 0
rule [dt14]: -(-x) -> x
rule [dt15]: P(0) -> -1
rule [dt16.i] for i in 0..8: P({i'}) -> {i}
rule [dt17]: P(x ^d 0) -> P(x) ^d 9
rule [dt18.i] for i in 0..8: P(x ^d {i'}) -> x ^d {i}
rule [dt19]: P(-x) -> -S(x)
rule [dt20.i] for i in 0..8: S(-{i'}) -> -{i}
rule [dt21]: S(-(x ^d 0)) -> -(P(x) ^d 9)
rule [dt22.i] for i in 0..8: S(-(x ^d {i'})) -> -(x ^d {i})
rule [dt23]: (-x) ^d y -> -(x ^d (-y))
rule [dt24.i.j] for i in 1..9, j in 1..9: {i} ^d (-{j}) -> P({i}) ^d {j*}
rule [dt25.i] for i in 1..9: (x ^d y) ^d (-{i}) -> P(x ^d y) ^d {i*}
rule [dt26]: x ^d (-(y ^d z)) -> -((y + (-x)) ^d z)
rule [dt27.i] for i in 1..9: x + (-{i}) -> P^{i}(x)
rule [dt28]: x + (-(y ^d z)) -> -(y ^d (z + (-x)))
rule [dt29.i] for i in 1..9: (-{i}) + x -> P^{i}(x)
rule [dt30]: (-(x ^d y)) + z -> -(x ^d (y + (-z)))
rule [dt31]: x * (-y) -> -(x * y)
rule [dt32]: (-x) * y -> -(x * y)
)";

// --- Integers as a commutative ring term algebra -------------------------------

const char* kRingZ = R"(# ddrs-format 1
system RingZ over ring
# Ring presentation over 0, 1, -, +, *; normal forms are 0, chains
# (..(1+1)..)+1 and their negations.
rule [r1]: -0 -> 0
rule [r2]: -(-x) -> x
rule [r3]: x + (y + z) -> (x + y) + z
rule [r4]: x + 0 -> x
rule [r5]: 1 + (-1) -> 0
rule [r6]: (x + 1) + (-1) -> x
rule [r7]: x + (-(y + 1)) -> (x + (-y)) + (-1)
rule [r8]: 0 + x -> x
rule [r9]: (-1) + 1 -> 0
rule [r10]: (-(x + 1)) + 1 -> -x
rule [r11]: (-x) + (-y) -> -(x + y)
rule [r12]: x * 0 -> 0
rule [r13]: x * 1 -> x
rule [r14]: x * (-y) -> (-x) * y
rule [r15]: x * (y + z) -> (x * y) + (x * z)
)";

std::string zdub_source(bool verbatim) {
  std::string s = "# ddrs-format 1\nsystem ";
  s += verbatim ? "Zdub-verbatim" : "Zdub";
  s += " over int-append\n";
  if (verbatim)
    s += "# Decimal view of the integers with the negative-append schema as\n"
         "# printed: its digit range includes 0, whose 10-minus image is\n"
         "# undefined, so expansion fails.\n";
  s += kZdubCommon;
  s += verbatim ? kZdubVerbatimTail : kZdubTail;
  s += kZdubSuffix;
  return s;
}

std::vector<BuiltinDef> make_defs() {
  std::vector<BuiltinDef> defs;

  defs.push_back({"Nubd", kNubd,
                  status(T::Proven, "each rule strictly reduces a natural measure of the term",
                         C::Open, "no refutation recorded",
                         G::Proven,
                         "stated in the defining literature; normal forms are the successor numerals"),
                  View::Unary});

  defs.push_back({"Zubd", kZubd,
                  status(T::Proven, "each rule strictly reduces a natural measure of the term",
                         C::Refuted,
                         "open-term peak: P(-(-x)) rewrites to both P(x) and -S(-x), two distinct "
                         "normal forms",
                         G::Open,
                         "intended as datatype defining; the printed source has a flawed zero rule "
                         "(corrected here) and records no proof"),
                  View::Unary});

  defs.push_back({"Zubd-verbatim", kZubdVerbatim,
                  status(T::Proven, "the flawed zero rule still strictly reduces term size",
                         C::Open, "no analysis recorded for the flawed variant",
                         G::Open,
                         "not ground confluent as printed: the zero rule is unsound and 0+1 "
                         "reaches both normal forms 0 and S(0)"),
                  View::Unary});

  defs.push_back({"Nu1", kNu1,
                  status(T::Proven, "explicit termination argument in the defining literature",
                         C::Open, "no refutation recorded",
                         G::Proven, "explicit ground-confluence argument in the defining literature"),
                  View::ZeroAppend});

  defs.push_back({"Zu1", kZu1,
                  status(T::Open, "presented as datatype defining; no proof recorded",
                         C::Open, "no analysis recorded",
                         G::Open,
                         "presented as datatype defining, but no rule is rooted at :u0, so the "
                         "desk sweep finds irreducible junk at size 4: (-0:u0):u0 — the "
                         "successor of -1 — is stuck outside the canonical forms"),
                  View::ZeroAppend});

  defs.push_back({"Nbud", kNbud,
                  status(T::Proven,
                         std::string("machine-checked termination proof (AProVE), ") + kKW,
                         C::Open,
                         std::string("no refutation known; completeness reported by ") + kKW,
                         G::Proven,
                         std::string("completeness (termination plus confluence) reported by ") + kKW),
                  View::BinaryAppend});

  defs.push_back({"Zbud", kZbud,
                  status(T::Proven,
                         std::string("machine-checked termination proof (AProVE), ") + kKW,
                         C::Refuted,
                         "critical peak: P(-(-x)) rewrites to both P(x) and -S(-x); ground "
                         "instances rejoin",
                         G::Proven,
                         "induction over the binary normal-form grammar, from the defining "
                         "literature"),
                  View::BinaryAppend});

  defs.push_back({"Ndub", kNdub,
                  status(T::Proven,
                         std::string("machine-checked termination proof (AProVE), ") + kKW,
                         C::Open,
                         std::string("no refutation known; completeness reported by ") + kKW,
                         G::Proven,
                         std::string("completeness (termination plus confluence) reported by ") + kKW),
                  View::DecimalAppend});

  std::string zdub = zdub_source(false);
  std::string zdub_verbatim = zdub_source(true);
  static std::string zdub_store, zdub_verbatim_store;
  zdub_store = zdub;
  zdub_verbatim_store = zdub_verbatim;
  defs.push_back({"Zdub", zdub_store.c_str(),
                  status(T::Proven,
                         std::string("machine-checked termination proof (AProVE), ") + kKW,
                         C::Refuted,
                         std::string("full confluence disproven (CSI), ") + kKW,
                         G::Open,
                         "stated as an open question in the defining literature"),
                  View::DecimalAppend});

  defs.push_back({"Zdub-verbatim", zdub_verbatim_store.c_str(),
                  status(T::Proven,
                         std::string("machine-checked termination proof (AProVE), ") + kKW,
                         C::Refuted,
                         std::string("full confluence disproven (CSI), ") + kKW,
                         G::Open,
                         "as printed, the negative-append schema instantiates an undefined digit "
                         "operation (10-minus of 0) and cannot be expanded"),
                  View::DecimalAppend});

  defs.push_back({"Nut", kNut,
                  status(T::Open, "presented as datatype defining; no proof recorded",
                         C::Open, "no analysis recorded",
                         G::Open, "presented as datatype defining; no proof recorded"),
                  View::UnaryTree});

  defs.push_back({"Zut", kZut,
                  status(T::Open, "presented as datatype defining; no proof recorded",
                         C::Open, "no analysis recorded",
                         G::Open, "presented as datatype defining; no proof recorded"),
                  View::UnaryTree});

  defs.push_back({"Nbt", kNbt,
                  status(T::Proven,
                         std::string("machine-checked termination proof (AProVE), ") + kKW,
                         C::Refuted, std::string("full confluence disproven (CSI), ") + kKW,
                         G::Proven,
                         "ground confluence established for the closely related system of "
                         "Walters & Zantema (1995)"),
                  View::BinaryTree});

  defs.push_back({"Zbi", kZbi,
                  status(T::Proven,
                         std::string("machine-checked termination proof (AProVE), ") + kKW,
                         C::Refuted,
                         "association peak: x^b(y^b(z^bw)) has two one-step reducts; ground "
                         "instances rejoin",
                         G::Open,
                         "no proof recorded; the related system of Walters & Zantema (1995) is "
                         "proven ground confluent, but here the minus-one addition rules only "
                         "cover 1+-1 and -1+1, so the desk sweep finds -1+-1 irreducible at "
                         "size 5, stuck outside the canonical forms"),
                  View::BinaryTree});

  defs.push_back({"Ndt", kNdt,
                  status(T::Proven,
                         std::string("machine-checked termination proof (AProVE), ") + kKW,
                         C::Refuted, std::string("full confluence disproven (CSI), ") + kKW,
                         G::Open, "no proof recorded"),
                  View::DecimalTree});

  defs.push_back({"Zdt", kZdt,
                  status(T::Open,
                         std::string("open question whether rewriting always terminates; "
                                     "automated provers failed, ") + kKW,
                         C::Refuted, std::string("full confluence disproven (CSI), ") + kKW,
                         G::Open,
                         std::string("open question, ") + kKW),
                  View::DecimalTree});

  defs.push_back({"RingZ", kRingZ,
                  status(T::Proven,
                         "strictly decreasing rational weight interpretation (the recorded "
                         "built-in certificate)",
                         C::Open, "no refutation recorded",
                         G::Proven,
                         "structural induction over the ring normal-form grammar, from the "
                         "defining literature"),
                  View::Ring});

  return defs;
}

}  // namespace

const std::vector<BuiltinDef>& builtin_defs() {
  static const std::vector<BuiltinDef> defs = make_defs();
  return defs;
}

}  // namespace ddrs
