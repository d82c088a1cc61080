"""Render training examples into chat-formatted text with loss boundaries.

Loss bounds are byte offsets into the UTF-8 encoding of full_text, so any
downstream tokenizer can recover the exact response span via its own
offset mapping.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigError
from .generate import TaskKind, TrainingExample


@dataclass(frozen=True)
class ChatTemplate:
    user_open: str = "|user| "
    assistant_open: str = " |assistant| "
    closer: str = ""

    def __post_init__(self) -> None:
        if not self.user_open or not self.assistant_open:
            raise ConfigError("chat template role markers must be non-empty")
        if self.user_open == self.assistant_open:
            raise ConfigError("chat template role markers must differ")


DEFAULT_TEMPLATE = ChatTemplate()


@dataclass(frozen=True)
class RenderedExample:
    full_text: str
    loss_start: int
    loss_end: int


def render(example: TrainingExample, template: ChatTemplate = DEFAULT_TEMPLATE) -> RenderedExample:
    """Wrap one example in role markers; NTP stays raw with whole-string loss."""
    if example.task is TaskKind.NTP:
        return RenderedExample(
            full_text=example.response,
            loss_start=0,
            loss_end=len(example.response.encode("utf-8")),
        )
    prefix = template.user_open + example.user_query + template.assistant_open
    loss_start = len(prefix.encode("utf-8"))
    loss_end = loss_start + len(example.response.encode("utf-8"))
    return RenderedExample(
        full_text=prefix + example.response + template.closer,
        loss_start=loss_start,
        loss_end=loss_end,
    )


def loss_slice(rendered: RenderedExample) -> str:
    """The exact substring the loss covers (decoded from the byte range)."""
    raw = rendered.full_text.encode("utf-8")
    return raw[rendered.loss_start : rendered.loss_end].decode("utf-8")


def raw_record(example: TrainingExample) -> dict:
    return {
        "task": example.task.value,
        "doc_id": example.doc_id,
        "sent_index": example.sent_index,
        "user_query": example.user_query,
        "response": example.response,
        "selection_seed": example.selection_seed,
    }


def rendered_record(
    example: TrainingExample, template: ChatTemplate = DEFAULT_TEMPLATE
) -> dict:
    rendered = render(example, template)
    return {
        "full_text": rendered.full_text,
        "loss_start": rendered.loss_start,
        "loss_end": rendered.loss_end,
        "task": example.task.value,
        "doc_id": example.doc_id,
        "sent_index": example.sent_index,
    }


def prompt_completion_record(
    example: TrainingExample, template: ChatTemplate = DEFAULT_TEMPLATE
) -> dict:
    rendered = render(example, template)
    raw = rendered.full_text.encode("utf-8")
    if example.task is TaskKind.NTP:
        completion = example.response
    else:
        completion = example.response + template.closer
    return {
        "prompt": raw[: rendered.loss_start].decode("utf-8"),
        "completion": completion,
    }
