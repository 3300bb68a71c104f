package org.antlr.v4.automata;

import org.antlr.v4.tool.LexerGrammar;

public class ParserATNFactory {
    LexerGrammar grammar;

    public ParserATNFactory(LexerGrammar grammar) {
        this.grammar = grammar;
    }
}
