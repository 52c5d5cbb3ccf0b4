// trustledger: evidence-based trust scoring over a simulated block ledger
// Copyright 2026 The trustledger Authors.
// Licensed under the Apache License, Version 2.0.
#include <trustledger/serialize.hpp>

#include <trustledger/contracts.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

namespace trustledger {
namespace {

// A small chain with every transaction kind, one revert, and all four event
// kinds, so the round trip exercises each serializer branch.
void populate(Node& node) {
    node.ledger().create_account("alice", 50'000'000);
    node.ledger().create_account("bob", 50'000'000);
    node.ledger().create_account("svc", 0);
    node.ledger().create_account("prov", 50'000'000);
    node.contracts().register_resource("printer", 10, "svc");

    auto submit = [&](const Address& s, TxPayload p) {
        Transaction tx;
        tx.sender = s;
        tx.payload = std::move(p);
        ASSERT_TRUE(node.ledger().submit_transaction(std::move(tx)).accepted);
    };

    submit("alice", AccessRequestPayload{"printer", 10});
    submit("prov", ProviderRegistrationPayload{100});
    submit("bob", TransferPayload{"alice", 123});
    node.ledger().produce_block(node.next_block_time());

    submit("alice", ReviewSubmissionPayload{"alice", 1, 4});
    submit("prov", ScoreUpdatePayload{"printer", 0.75});
    submit("bob", ScoreQueryPayload{"prov", "printer", 100});
    submit("bob", ReviewSubmissionPayload{"bob", 1, 2});  // reverts: not bob's interaction
    node.ledger().produce_block(node.next_block_time());
}

TEST(SerializeTest, DumpLoadDumpIsByteIdentical) {
    Node node;
    populate(node);
    std::ostringstream first;
    dump_chain(node.ledger(), first);

    std::istringstream in(first.str());
    ChainDump dump = load_chain(in);
    EXPECT_EQ(dump.blocks.size(), node.ledger().blocks().size());

    std::ostringstream second;
    dump_chain(dump.blocks, dump.config, second);
    EXPECT_EQ(first.str(), second.str());
}

TEST(SerializeTest, LoadedChainVerifiesAndPreservesState) {
    Node node;
    populate(node);
    std::ostringstream out;
    dump_chain(node.ledger(), out);

    std::istringstream in(out.str());
    Ledger restored = ledger_from_dump(load_chain(in));
    EXPECT_TRUE(restored.verify_chain().ok);
    EXPECT_EQ(restored.blocks().back().hash, node.ledger().blocks().back().hash);
    EXPECT_EQ(restored.query_events().size(), node.ledger().query_events().size());
    EXPECT_EQ(restored.config().blockInterval, node.ledger().config().blockInterval);
}

TEST(SerializeTest, RoundTripKeepsRevertedStatusAndError) {
    Node node;
    populate(node);
    std::ostringstream out;
    dump_chain(node.ledger(), out);
    std::istringstream in(out.str());
    ChainDump dump = load_chain(in);

    const auto& txs = dump.blocks.at(2).transactions;
    ASSERT_EQ(txs.size(), 4u);
    EXPECT_EQ(txs[3].status, TxStatus::Reverted);
    EXPECT_EQ(txs[3].error, ExecError::SubmitterMismatch);
    EXPECT_GT(txs[3].fee, 0u);
}

TEST(SerializeTest, TamperedRatingBreaksVerification) {
    Node node;
    populate(node);
    std::ostringstream out;
    dump_chain(node.ledger(), out);
    std::istringstream in(out.str());
    ChainDump dump = load_chain(in);

    auto& review = dump.blocks.at(2).transactions.at(0);
    std::get<ReviewSubmissionPayload>(review.payload).rating = 5;

    Ledger tampered = ledger_from_dump(std::move(dump));
    const VerifyResult vr = tampered.verify_chain();
    ASSERT_FALSE(vr.ok);
    EXPECT_EQ(vr.blockNumber, 2u);
}

TEST(SerializeTest, LoadRejectsGarbage) {
    std::istringstream empty("");
    EXPECT_THROW(load_chain(empty), ParseError);

    std::istringstream notJson("this is not json\n");
    EXPECT_THROW(load_chain(notJson), ParseError);

    std::istringstream wrongFormat(R"({"format":"something-else","version":1})"
                                   "\n");
    EXPECT_THROW(load_chain(wrongFormat), ParseError);

    std::istringstream wrongVersion(R"({"format":"trustledger-chain","version":99})"
                                    "\n");
    EXPECT_THROW(load_chain(wrongVersion), ParseError);

    std::istringstream headerOnly(R"({"format":"trustledger-chain","version":1,"blocks":1,)"
                                  R"("blockInterval":12,"blockGasLimit":1,"baseGasPrice":1})"
                                  "\n");
    EXPECT_THROW(load_chain(headerOnly), ParseError);  // promised block missing
}

TEST(SerializeTest, EventCsvHasRowPerEventPlusHeader) {
    Node node;
    populate(node);
    std::ostringstream csv;
    export_events_csv(node.ledger().blocks(), csv);

    std::istringstream lines(csv.str());
    std::string line;
    std::vector<std::string> rows;
    while (std::getline(lines, line))
        rows.push_back(line);

    ASSERT_EQ(rows.size(), 1u + node.ledger().query_events().size());
    EXPECT_EQ(rows[0],
              "block,index,kind,user,resource,submitter,delegator,provider,service,"
              "requester,uid,rating,score");
    // every row has the full column count
    for (const auto& r : rows)
        EXPECT_EQ(std::count(r.begin(), r.end(), ','), 12) << r;
    // interaction row carries user, resource and uid
    EXPECT_EQ(rows[1], "1,0,interaction,alice,printer,,,,,,1,,");
}

}  // namespace
}  // namespace trustledger
