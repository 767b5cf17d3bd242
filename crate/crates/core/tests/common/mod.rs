pub mod seifert;
