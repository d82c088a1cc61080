from __future__ import annotations

import pytest

from parseforge.errors import ConfigError
from parseforge.generate import TaskKind, TrainingExample
from parseforge.render import (
    ChatTemplate,
    DEFAULT_TEMPLATE,
    loss_slice,
    prompt_completion_record,
    raw_record,
    render,
    rendered_record,
)


def example(task=TaskKind.MTP, user_query="Complete the masked token: The <mask> sat", response="cat"):
    return TrainingExample(
        task=task,
        user_query=user_query,
        response=response,
        doc_id="d",
        sent_index=0,
        selection_seed=11,
    )


def test_render_default_template():
    rendered = render(example())
    assert rendered.full_text == (
        "|user| Complete the masked token: The <mask> sat |assistant| cat"
    )
    assert loss_slice(rendered) == "cat"


def test_render_ntp_is_raw_with_whole_string_loss():
    rendered = render(example(task=TaskKind.NTP, user_query="", response="some raw text"))
    assert rendered.full_text == "some raw text"
    assert (rendered.loss_start, rendered.loss_end) == (0, 13)


def test_closer_lies_outside_the_loss_region():
    bare = render(example())
    closed = render(example(), ChatTemplate(closer="\n"))
    assert closed.loss_end == bare.loss_end
    assert closed.full_text == bare.full_text + "\n"
    assert loss_slice(closed) == "cat"


def test_loss_bounds_are_byte_offsets():
    rendered = render(example(user_query="Complete the masked token: le <mask>", response="café"))
    assert loss_slice(rendered) == "café"
    raw = rendered.full_text.encode("utf-8")
    assert raw[rendered.loss_start : rendered.loss_end].decode("utf-8") == "café"
    assert rendered.loss_end - rendered.loss_start == len("café".encode("utf-8"))


def test_template_invariants():
    with pytest.raises(ConfigError):
        ChatTemplate(user_open="|x| ", assistant_open="|x| ")
    with pytest.raises(ConfigError):
        ChatTemplate(user_open="")


def test_rendering_distinct_pairs_is_injective():
    seen = {
        render(example(user_query=q, response=r)).full_text
        for q, r in [("a <mask>", "b"), ("a", "<mask> b"), ("a <mask> b", "c")]
    }
    assert len(seen) == 3


def test_raw_record_field_order():
    record = raw_record(example())
    assert list(record) == [
        "task",
        "doc_id",
        "sent_index",
        "user_query",
        "response",
        "selection_seed",
    ]
    assert record["task"] == "MTP"
    assert record["selection_seed"] == 11


def test_rendered_record_field_order():
    record = rendered_record(example())
    assert list(record) == [
        "full_text",
        "loss_start",
        "loss_end",
        "task",
        "doc_id",
        "sent_index",
    ]
    raw = record["full_text"].encode("utf-8")
    assert raw[record["loss_start"] : record["loss_end"]].decode("utf-8") == "cat"


def test_prompt_completion_record_reconstructs_full_text():
    template = ChatTemplate(closer=" <end>")
    record = prompt_completion_record(example(), template)
    assert list(record) == ["prompt", "completion"]
    assert record["prompt"].endswith(" |assistant| ")
    assert record["completion"] == "cat <end>"
    rendered = render(example(), template)
    assert record["prompt"] + record["completion"] == rendered.full_text


def test_prompt_completion_for_ntp():
    record = prompt_completion_record(example(task=TaskKind.NTP, user_query="", response="raw"))
    assert record == {"prompt": "", "completion": "raw"}


def test_default_template_markers():
    assert DEFAULT_TEMPLATE.user_open == "|user| "
    assert DEFAULT_TEMPLATE.assistant_open == " |assistant| "
    assert DEFAULT_TEMPLATE.closer == ""
