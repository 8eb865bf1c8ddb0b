import subprocess

import pytest

from mvee.asm import (
    ControlKind,
    Immediate,
    LabelRef,
    LineKind,
    Memory,
    ParseError,
    Register,
    classify_control,
    parse_asm_file,
    parse_instruction,
    parse_operand,
)


def test_ret_parses_to_return():
    i = parse_instruction("ret")
    assert i.mnemonic == "ret"
    assert i.operands == ()
    assert i.control.kind is ControlKind.RETURN


def test_mov_immediate_register():
    i = parse_instruction("movq\t$4, %rax")
    assert i.mnemonic == "movq"
    assert isinstance(i.operands[0], Immediate)
    assert i.operands[0].value == 4
    assert isinstance(i.operands[1], Register)
    assert i.operands[1].name == "rax"
    assert i.control.kind is ControlKind.FALLTHROUGH


def test_memory_operand_full_form():
    i = parse_instruction("movl\t8(%rax,%rbx,4), %ecx")
    mem = i.operands[0]
    assert isinstance(mem, Memory)
    assert mem.disp_value == 8
    assert mem.base == "rax"
    assert mem.index == "rbx"
    assert mem.scale == 4


def test_indirect_jump_is_representable():
    i = parse_instruction("jmp\t*%rax")
    assert i.control.kind is ControlKind.INDIRECT_JUMP
    assert i.operands[0].raw == "*%rax"


@pytest.mark.parametrize("mnemonic,operand,expected,target", [
    ("jne", ".L3", ControlKind.CONDITIONAL_JUMP, ".L3"),
    ("call", "printf", ControlKind.CALL, "printf"),
    ("jmp", ".L9", ControlKind.UNCONDITIONAL_JUMP, ".L9"),
])
def test_classify_direct_transfers(mnemonic, operand, expected, target):
    ctl = classify_control(mnemonic, (parse_operand(operand),))
    assert ctl.kind is expected
    assert ctl.target == target


def test_classify_arithmetic_falls_through():
    ops = (parse_operand("$1"), parse_operand("%rax"))
    assert classify_control("addq", ops).kind is ControlKind.FALLTHROUGH


def test_classify_is_total_for_unknown_mnemonics():
    assert classify_control("vfmadd231pd", ()).kind is ControlKind.FALLTHROUGH
    assert classify_control("endbr64", ()).kind is ControlKind.FALLTHROUGH


def test_call_star_is_indirect():
    i = parse_instruction("call\t*%rax")
    assert i.control.kind is ControlKind.INDIRECT_CALL


def test_symbolic_immediate_is_label_reference():
    i = parse_instruction("movl\t$.LC0, %edi")
    op = i.operands[0]
    assert isinstance(op, LabelRef)
    assert op.name == ".LC0"
    assert op.raw == "$.LC0"


def test_rip_relative_memory():
    i = parse_instruction("leaq\t.LC0(%rip), %rsi")
    mem = i.operands[0]
    assert isinstance(mem, Memory)
    assert mem.displacement == ".LC0"
    assert mem.disp_value is None
    assert mem.base == "rip"


def test_segment_absolute_operand():
    i = parse_instruction("movq\t%fs:40, %rax")
    mem = i.operands[0]
    assert isinstance(mem, Memory)
    assert mem.segment == "fs"
    assert mem.disp_value == 40


def test_rep_prefix_folds_into_mnemonic():
    i = parse_instruction("rep ret")
    assert i.mnemonic == "rep ret"
    assert i.control.kind is ControlKind.RETURN


def test_immediate_spelling_round_trips():
    hex_i = parse_instruction("cmpq\t$0x1f, %rax")
    dec_i = parse_instruction("cmpq\t$31, %rax")
    assert hex_i.operands[0].value == dec_i.operands[0].value == 31
    assert hex_i.operands[0].raw == "$0x1f"
    assert dec_i.operands[0].raw == "$31"


def test_bad_scale_is_a_parse_error():
    with pytest.raises(ParseError):
        parse_instruction("movl\t(%rax,%rbx,3), %ecx", line=7)


def test_malformed_immediate_is_a_parse_error():
    with pytest.raises(ParseError):
        parse_instruction("movq\t$0x, %rax")
    with pytest.raises(ParseError):
        parse_instruction("movq\t$, %rax")


def test_label_with_trailing_code_is_rejected():
    with pytest.raises(ParseError):
        parse_asm_file(".L1: movq $1, %rax\n", "b")


SAMPLE = """\t.text
\t.globl main
main:
.LFB0:
\t.cfi_startproc
\tpushq\t%rbp   # save frame
\tmovq\t%rsp, %rbp
\ttestq\t%rdi, %rdi
\tje\t.L2
\tcall\thelper@PLT
.L2:
\tpopq\t%rbp
\tret
\t.cfi_endproc
\t.string\t"a # not a comment"

# full line comment
"""


def test_file_parse_classifies_every_line():
    f = parse_asm_file(SAMPLE, "b0")
    kinds = [ln.kind for ln in f.lines]
    assert kinds.count(LineKind.INSTRUCTION) == 7
    assert kinds.count(LineKind.LABEL) == 3
    assert kinds.count(LineKind.DIRECTIVE) == 5
    assert kinds.count(LineKind.COMMENT) == 1
    assert kinds.count(LineKind.BLANK) == 1
    assert f.labels["main"] == 2
    assert not f.duplicate_labels


def test_quoted_hash_survives_comment_stripping():
    f = parse_asm_file('\t.string\t"a # b"\n', "b")
    assert f.lines[0].kind is LineKind.DIRECTIVE


def test_duplicate_labels_flagged():
    f = parse_asm_file(".L1:\n\tnop\n.L1:\n\tnop\n", "b")
    assert ".L1" in f.duplicate_labels


def test_render_round_trips_token_sequence():
    f = parse_asm_file(SAMPLE, "b0")
    for line in f.instructions():
        rendered = line.instruction.render()
        original_tokens = line.text.split("#")[0].split()
        assert rendered.replace(",", " ").split() == [
            t.rstrip(",") for t in original_tokens
        ]


def test_no_unconditional_jump_without_label_operand():
    f = parse_asm_file(SAMPLE + "\tjmp\t*%rax\n\tjmp\t.L2\n", "b0")
    for line in f.instructions():
        ctl = line.instruction.control
        if ctl.kind is ControlKind.UNCONDITIONAL_JUMP:
            assert ctl.target is not None
            first = line.instruction.operands[0]
            assert isinstance(first, LabelRef)


def test_parse_totality_on_compiler_output(tmp_path, gcc_available, demo_copy):
    subprocess.run(
        "mkdir -p build && g++ -O2 -S main.cpp -o build/main.s",
        shell=True, cwd=demo_copy, check=True, capture_output=True,
    )
    text = (demo_copy / "build" / "main.s").read_text()
    f = parse_asm_file(text, "demo")  # no ParseError
    assert sum(1 for _ in f.instructions()) > 100
