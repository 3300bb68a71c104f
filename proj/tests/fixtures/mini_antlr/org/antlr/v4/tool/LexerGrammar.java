package org.antlr.v4.tool;

public class LexerGrammar {
    String fileName;

    public String getFileName() {
        return fileName;
    }
}
