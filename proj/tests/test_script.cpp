#include "smartotps/errors.hpp"
#include "smartotps/script.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace smartotps;

namespace {

const char* kHappy = R"(# honest transfer
params 128,16,2,8,1
rng-seed 9
account user 1000
account bob 0
depth 2
bootstrap secure
fund 100
op transfer bob 30
expect balance bob 30
expect wallet-balance 70
expect next-op-id 1
)";

} // namespace

TEST(Script, HappyPath)
{
    ScriptRunner r;
    std::istringstream in(kHappy);
    const std::string out = r.run(in);
    EXPECT_NE(out.find("contract_id="), std::string::npos);
    EXPECT_NE(out.find("expect balance ok"), std::string::npos);
    EXPECT_TRUE(r.bootstrapped());
    EXPECT_EQ(r.ledger().balance("bob"), 30u);
}

TEST(Script, OutputIsDeterministic)
{
    ScriptRunner a;
    ScriptRunner b;
    std::istringstream ia(kHappy);
    std::istringstream ib(kHappy);
    EXPECT_EQ(a.run(ia), b.run(ib));
    EXPECT_EQ(a.ledger().state_hash(), b.ledger().state_hash());
}

TEST(Script, FailedExpectationNamesTheLine)
{
    ScriptRunner r;
    std::istringstream in("account user 50\naccount bob 0\nbootstrap secure\nfund 10\nexpect wallet-balance 11\n");
    try {
        r.run(in);
        FAIL() << "expected IntegrityError";
    } catch (const IntegrityError& e) {
        EXPECT_EQ(std::string(e.what()).rfind("line 5: ", 0), 0u) << e.what();
    }
}

TEST(Script, SetupAfterLedgerIsRejected)
{
    ScriptRunner r;
    r.execute("bootstrap secure");
    EXPECT_THROW(r.execute("params 128,16,2,8,1"), ParseError);
    EXPECT_THROW(r.execute("rng-seed 3"), ParseError);
}

TEST(Script, UnknownCommandAndBadArity)
{
    ScriptRunner r;
    EXPECT_THROW(r.execute("teleport"), ParseError);
    EXPECT_THROW(r.execute("fund"), ParseError);
    EXPECT_EQ(r.execute("   # only a comment"), "");
}
